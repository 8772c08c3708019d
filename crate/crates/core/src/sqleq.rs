//! The relative-idempotency order `p ⊑ q <=> p <= q and p & (q -> p) = p`.

use crate::divisible::{c_set, require_divisible, tuple};
use crate::error::{Error, Result};
use crate::lattice::{covering_pairs, Elem};
use crate::quantale::{subset_family, Quantale};
use crate::report::{Verdict, WitnessReport};

/// `⊑` on a divisible quantale, with the principal lower sets `C_q`.
#[derive(Clone, Debug)]
pub struct SqleqPoset<'q> {
    base: &'q Quantale,
    rel: Vec<bool>,
    down: Vec<Vec<Elem>>,
}

/// Result of the `⊓` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SqMeet {
    pub value: Elem,
    /// Whether `value` really is the greatest `⊑`-lower bound.
    pub is_meet: bool,
}

impl SqMeet {
    pub fn warning(&self) -> bool {
        !self.is_meet
    }
}

pub fn build_sqleq(q: &Quantale) -> Result<SqleqPoset<'_>> {
    require_divisible(q, "build_sqleq")?;
    let n = q.len();
    let mut rel = vec![false; n * n];
    for p in q.elements() {
        for x in q.elements() {
            rel[p.index() * n + x.index()] = q.leq(p, x) && q.tensor(p, q.residual(x, p)) == p;
        }
    }
    let down = q.elements().map(|x| c_set(q, x)).collect();
    Ok(SqleqPoset { base: q, rel, down })
}

impl<'q> SqleqPoset<'q> {
    pub fn base(&self) -> &'q Quantale {
        self.base
    }

    #[inline]
    pub fn sqleq(&self, p: Elem, q: Elem) -> bool {
        self.rel[p.index() * self.base.len() + q.index()]
    }

    /// `C_q`, in canonical order.
    pub fn c(&self, q: Elem) -> &[Elem] {
        &self.down[q.index()]
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let q = self.base;
        q.elements().flat_map(|a| q.elements().filter(move |&b| self.sqleq(a, b)).map(move |b| (a, b))).collect()
    }

    pub fn hasse(&self) -> Vec<(Elem, Elem)> {
        covering_pairs(self.base.len(), |a, b| self.sqleq(Elem::new(a), Elem::new(b)))
    }

    fn lower_bounds<'a>(&'a self, a: &'a [Elem]) -> impl Iterator<Item = Elem> + 'a {
        self.base.elements().filter(move |&x| a.iter().all(|&y| self.sqleq(x, y)))
    }

    fn upper_bounds<'a>(&'a self, a: &'a [Elem]) -> impl Iterator<Item = Elem> + 'a {
        self.base.elements().filter(move |&x| a.iter().all(|&y| self.sqleq(y, x)))
    }

    /// `⊓A = join {q | q ⊑ a for all a in A}`. For `A = ∅` this is `top`, which
    /// is a `⊑`-meet only when every element is `⊑ top`.
    pub fn sqcap(&self, a: &[Elem]) -> SqMeet {
        let q = self.base;
        let value = q.join_all(self.lower_bounds(a));
        let is_lower = a.iter().all(|&y| self.sqleq(value, y));
        let is_greatest = self.lower_bounds(a).all(|x| self.sqleq(x, value));
        SqMeet { value, is_meet: is_lower && is_greatest }
    }

    /// `p ⊓ q` for a pair.
    pub fn meet2(&self, p: Elem, x: Elem) -> Elem {
        self.sqcap(&[p, x]).value
    }

    /// If `A` has a `⊑`-upper bound, returns `join A`, which is then its least
    /// `⊑`-upper bound. Returns `None` when no `⊑`-upper bound exists.
    pub fn sq_join(&self, a: &[Elem]) -> Result<Option<Elem>> {
        let q = self.base;
        let ubs: Vec<Elem> = self.upper_bounds(a).collect();
        if ubs.is_empty() {
            return Ok(None);
        }
        let j = q.join_all(a.iter().copied());
        if !ubs.contains(&j) || !ubs.iter().all(|&u| self.sqleq(j, u)) {
            return Err(Error::Invariant(format!(
                "join {} is not the least ⊑-upper bound of {}",
                q.show(j),
                q.show_set(a)
            )));
        }
        Ok(Some(j))
    }

    /// Order axioms, `⊑ ⊆ <=`, `C_q = {p | p ⊑ q}`, the sandwich `p <= q <= r, p ⊑ r => p ⊑ q`, and joins below a common ⊑-bound.
    pub fn order_reports(&self) -> Vec<WitnessReport> {
        let q = self.base;
        let name = q.name();
        let els: Vec<Elem> = q.elements().collect();
        let mut out = Vec::new();

        let mut po = WitnessReport::new("sqleq-partial-order", name, "⊑ is reflexive, antisymmetric, transitive");
        'po: for &a in &els {
            if !self.sqleq(a, a) {
                po.fail();
                po.push("not-reflexive", q.show(a));
                break;
            }
            for &b in &els {
                if a != b && self.sqleq(a, b) && self.sqleq(b, a) {
                    po.fail();
                    po.push("not-antisymmetric", tuple(q, &[a, b]));
                    break 'po;
                }
                for &c in &els {
                    if self.sqleq(a, b) && self.sqleq(b, c) && !self.sqleq(a, c) {
                        po.fail();
                        po.push("not-transitive", tuple(q, &[a, b, c]));
                        break 'po;
                    }
                }
            }
        }
        out.push(po);

        let mut sub = WitnessReport::new("sqleq-in-leq", name, "p ⊑ q => p <= q; C_q = {p | p ⊑ q}");
        for &a in &els {
            for &b in &els {
                if self.sqleq(a, b) && !q.leq(a, b) {
                    sub.fail();
                    sub.push("pair", tuple(q, &[a, b]));
                }
            }
            let principal: Vec<Elem> = els.iter().copied().filter(|&p| self.sqleq(p, a)).collect();
            if principal != self.c(a) {
                sub.fail();
                sub.push("C_q-mismatch", q.show(a));
            }
        }
        out.push(sub);

        let mut sandwich = WitnessReport::new("sandwich", name, "p <= q <= r and p ⊑ r => p ⊑ q");
        'sw: for &p in &els {
            for &x in &els {
                for &r in &els {
                    if q.leq(p, x) && q.leq(x, r) && self.sqleq(p, r) && !self.sqleq(p, x) {
                        sandwich.fail();
                        sandwich.push("triple", tuple(q, &[p, x, r]));
                        break 'sw;
                    }
                }
            }
        }
        out.push(sandwich);

        let mut join = WitnessReport::new("sqleq-join", name, "a ⊑ q for all a in A => join A ⊑ q");
        'jl: for &x in &els {
            for s in subset_family(self.c(x)) {
                let j = q.join_all(s.iter().copied());
                if !self.sqleq(j, x) {
                    join.fail();
                    join.push("q", q.show(x));
                    join.push("A", q.show_set(&s));
                    break 'jl;
                }
            }
        }
        out.push(join);
        out
    }

    /// `⊓` is the `⊑`-meet for every nonempty `A`; the empty meet is reported as a
    /// warning when `top` is not `⊑`-above everything.
    pub fn meet_reports(&self) -> Vec<WitnessReport> {
        let q = self.base;
        let els: Vec<Elem> = q.elements().collect();
        let mut nonempty = WitnessReport::new("sqcap-meet", q.name(), "⊓A = join{q | q ⊑ a for all a in A} is the ⊑-meet of A");
        for s in subset_family(&els) {
            if s.is_empty() {
                continue;
            }
            let m = self.sqcap(&s);
            if !m.is_meet {
                nonempty.fail();
                nonempty.push("A", q.show_set(&s));
                nonempty.push("⊓A", q.show(m.value));
                break;
            }
        }
        let mut empty = WitnessReport::new("sqcap-empty", q.name(), "⊓∅ = top is the ⊑-top");
        let m = self.sqcap(&[]);
        empty.push("⊓∅", q.show(m.value));
        if m.warning() {
            empty.verdict = Verdict::Warn;
            let off = els.iter().find(|&&x| !self.sqleq(x, q.top())).copied().unwrap_or(q.top());
            empty.push("not-below-top", q.show(off));
            empty = empty.note("(Q,⊑) has no top: the empty ⊑-meet does not exist");
        }

        let mut joins = WitnessReport::new("sq-join", q.name(), "if A has a ⊑-upper bound, join A is its least one");
        let mut missing = 0usize;
        for s in subset_family(&els) {
            match self.sq_join(&s) {
                Ok(Some(_)) => {}
                Ok(None) => missing += 1,
                Err(e) => {
                    joins.fail();
                    joins.push("A", q.show_set(&s));
                    joins = joins.note(e.to_string());
                    break;
                }
            }
        }
        joins.push("subsets-without-upper-bound", missing);
        vec![nonempty, empty, joins]
    }

    /// On a frame `⊑` is `<=`, `⊓` is `∧`, `C_q = ↓q` and `⊔` is `join`.
    pub fn frame_collapse_report(&self) -> WitnessReport {
        let q = self.base;
        let mut r = WitnessReport::new("frame-collapse", q.name(), "Q frame => ⊑ = <=, ⊓ = ∧, C_q = ↓q");
        for a in q.elements() {
            if self.c(a) != q.lattice().down_set(a).as_slice() {
                r.fail();
                r.push("C_q", q.show(a));
                return r;
            }
            for b in q.elements() {
                if self.sqleq(a, b) != q.leq(a, b) || self.meet2(a, b) != q.meet(a, b) {
                    r.fail();
                    r.push("pair", tuple(q, &[a, b]));
                    return r;
                }
                if self.sq_join(&[a, b]).ok().flatten() != Some(q.join(a, b)) {
                    r.fail();
                    r.push("join", tuple(q, &[a, b]));
                    return r;
                }
            }
        }
        r
    }
}
