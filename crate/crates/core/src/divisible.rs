//! Divisibility analysis and the constructions that depend on it: idempotents,
//! the frame test, `v ∘_q u`, the quantales `(↓q, ∘_q)` and relative idempotents.

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::{subset_family, Quantale};
use crate::report::{Verdict, WitnessReport};

/// Verdict and first counterexample for one divisibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
}

impl Condition {
    fn scan(mut it: impl Iterator<Item = Vec<Elem>>) -> Self {
        match it.next() {
            Some(w) => Condition { holds: false, witness: Some(w) },
            None => Condition { holds: true, witness: None },
        }
    }
}

/// The four equivalent divisibility conditions, evaluated independently.
///
/// 1. `u = q & (q -> u)` whenever `u <= q`
/// 2. `v & (q -> u) = (q -> v) & u` whenever `u, v <= q`
/// 3. `u = q & p` for some `p` whenever `u <= q`
/// 4. `p ∧ q = p & (p -> q)` for all `p, q`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub conditions: [Condition; 4],
    pub unit_is_top: bool,
}

impl Divisibility {
    /// The overall verdict is condition 1.
    pub fn divisible(&self) -> bool {
        self.conditions[0].holds
    }

    /// True when the four verdicts agree (they are equivalent, so disagreement is a bug flag).
    pub fn consistent(&self) -> bool {
        self.conditions.iter().all(|c| c.holds == self.conditions[0].holds)
            && (!self.divisible() || self.unit_is_top)
    }

    pub fn report(&self, q: &Quantale) -> WitnessReport {
        let mut r = WitnessReport::new("divisibility", q.name(), "u <= q => u = q&(q->u)")
            .item("divisible", if self.divisible() { "yes" } else { "no" });
        let labels = ["(i)", "(ii)", "(iii)", "(iv)"];
        for (c, label) in self.conditions.iter().zip(labels) {
            let v = match &c.witness {
                None => "true".to_string(),
                Some(w) => format!("false at {}", tuple(q, w)),
            };
            r.push(label, v);
        }
        r.push("unit=top", self.unit_is_top);
        if !self.consistent() {
            r.fail();
            r = r.note("divisibility conditions disagree");
        }
        r
    }
}

pub(crate) fn tuple(q: &Quantale, w: &[Elem]) -> String {
    let parts: Vec<&str> = w.iter().map(|&e| q.show(e)).collect();
    format!("({})", parts.join(","))
}

pub fn divisibility(q: &Quantale) -> Divisibility {
    let els: Vec<Elem> = q.elements().collect();
    let below = |qq: Elem| els.iter().copied().filter(move |&u| q.leq(u, qq));

    let c1 = Condition::scan(els.iter().flat_map(|&qq| {
        below(qq).filter(move |&u| q.tensor(qq, q.residual(qq, u)) != u).map(move |u| vec![u, qq])
    }));
    let c2 = Condition::scan(els.iter().flat_map(|&qq| {
        below(qq).flat_map(move |u| {
            below(qq)
                .filter(move |&v| q.tensor(v, q.residual(qq, u)) != q.tensor(q.residual(qq, v), u))
                .map(move |v| vec![u, v, qq])
        })
    }));
    let c3 = Condition::scan(els.iter().flat_map(|&qq| {
        below(qq)
            .filter(move |&u| !q.elements().any(|p| q.tensor(qq, p) == u))
            .map(move |u| vec![u, qq])
    }));
    let c4 = Condition::scan(els.iter().flat_map(|&p| {
        els.iter()
            .copied()
            .filter(move |&qq| q.meet(p, qq) != q.tensor(p, q.residual(p, qq)))
            .map(move |qq| vec![p, qq])
    }));
    Divisibility { conditions: [c1, c2, c3, c4], unit_is_top: q.unit() == q.top() }
}

pub fn is_divisible(q: &Quantale) -> bool {
    divisibility(q).divisible()
}

pub(crate) fn require_divisible(q: &Quantale, what: &str) -> Result<()> {
    if is_divisible(q) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} requires a divisible quantale; {} is not", q.name())))
    }
}

/// The idempotent elements `{q | q&q = q}` and a report on their closure under
/// binary meets and arbitrary joins.
pub fn idempotents(q: &Quantale) -> (Vec<Elem>, WitnessReport) {
    let idem: Vec<Elem> = q.elements().filter(|&e| q.tensor(e, e) == e).collect();
    let mut r = WitnessReport::new("idempotents-subframe", q.name(), "idempotents form a subframe of (Q,∧)")
        .item("idempotents", q.show_set(&idem));
    for &a in &idem {
        for &b in &idem {
            if !idem.contains(&q.meet(a, b)) {
                r.fail();
                r.push("meet-not-closed", tuple(q, &[a, b]));
                return (idem, r);
            }
        }
    }
    for s in subset_family(&idem) {
        let j = q.join_all(s.iter().copied());
        if !idem.contains(&j) {
            r.fail();
            r.push("join-not-closed", q.show_set(&s));
            break;
        }
    }
    (idem, r)
}

/// True iff every element is idempotent; cross-checked against `& = ∧`.
pub fn is_frame(q: &Quantale) -> Result<bool> {
    let all_idem = q.elements().all(|e| q.tensor(e, e) == e);
    let tensor_is_meet = q.elements().all(|a| q.elements().all(|b| q.tensor(a, b) == q.meet(a, b)));
    if all_idem != tensor_is_meet && q.unit() == q.top() {
        return Err(Error::Invariant(format!(
            "{}: all-idempotent={all_idem} but tensor-is-meet={tensor_is_meet}",
            q.name()
        )));
    }
    Ok(all_idem && tensor_is_meet)
}

/// Distributivity `p ∧ (join S) = join {p ∧ s}` of the underlying lattice.
pub fn underlying_frame_check(q: &Quantale) -> Result<WitnessReport> {
    require_divisible(q, "underlying_frame_check")?;
    Ok(distributivity_report(q.lattice(), q.name(), |e| q.show(e).to_string()))
}

pub(crate) fn distributivity_report(
    l: &FiniteLattice,
    subject: &str,
    show: impl Fn(Elem) -> String,
) -> WitnessReport {
    let mut r = WitnessReport::new("underlying-frame", subject, "p ∧ (join S) = join{p ∧ s | s in S}");
    let els: Vec<Elem> = l.elements().collect();
    for s in subset_family(&els) {
        for &p in &els {
            let lhs = l.meet(p, l.join_all(s.iter().copied()));
            let rhs = l.join_all(s.iter().map(|&x| l.meet(p, x)));
            if lhs != rhs {
                r.fail();
                r.push("p", show(p));
                let names: Vec<String> = s.iter().map(|&x| show(x)).collect();
                r.push("S", crate::report::set_string(names));
                return r;
            }
        }
    }
    r
}

/// `v ∘_q u = v & (q -> u)`, asserted equal to `(q -> v) & u`.
pub fn circ(q: &Quantale, base: Elem, v: Elem, u: Elem) -> Result<Elem> {
    if !q.leq(u, base) || !q.leq(v, base) {
        return Err(Error::Domain(format!(
            "circ needs u, v <= q; got u={}, v={}, q={}",
            q.show(u),
            q.show(v),
            q.show(base)
        )));
    }
    let a = q.tensor(v, q.residual(base, u));
    let b = q.tensor(q.residual(base, v), u);
    if a != b {
        return Err(Error::Precondition(format!(
            "v&(q->u) = {} but (q->v)&u = {} at q={}: quantale is not divisible",
            q.show(a),
            q.show(b),
            q.show(base)
        )));
    }
    Ok(a)
}

/// The quantale `(↓q, ∘_q)` with unit `q`. Elements keep their names and
/// canonical order; the returned map sends new ids to the original elements.
pub fn downset_quantale(q: &Quantale, base: Elem) -> Result<(Quantale, Vec<Elem>)> {
    require_divisible(q, "downset_quantale")?;
    let down = q.lattice().down_set(base);
    let lattice = q.lattice().restrict(&down)?;
    let pos = |e: Elem| down.iter().position(|&d| d == e).expect("closed under ∘_q");
    let mut tensor = Vec::with_capacity(down.len() * down.len());
    for &v in &down {
        for &u in &down {
            tensor.push(Elem::new(pos(circ(q, base, v, u)?)));
        }
    }
    let names = down.iter().map(|&e| q.show(e).to_string()).collect();
    let unit = Elem::new(pos(base));
    let name = format!("{}|{}", q.name(), q.show(base));
    Ok((Quantale::new(name, names, lattice, tensor, unit)?, down))
}

/// `C_q = {p <= q | p & (q -> p) = p}`, with a report checking that it is a
/// subframe of the underlying frame of `(↓q, ∘_q)`.
pub fn relative_idempotents(q: &Quantale, base: Elem) -> (Vec<Elem>, WitnessReport) {
    let cq = c_set(q, base);
    let mut r = WitnessReport::new(
        "relative-idempotents-subframe",
        q.name(),
        "C_q = {p <= q | p&(q->p) = p} is a subframe of ↓q",
    )
    .item("q", q.show(base))
    .item("C_q", q.show_set(&cq));
    if !cq.contains(&q.bottom()) || !cq.contains(&base) {
        r.fail();
        r.push("missing", "bottom or q");
    }
    for &a in &cq {
        for &b in &cq {
            if !cq.contains(&q.meet(a, b)) {
                r.fail();
                r.push("meet-not-closed", tuple(q, &[a, b]));
                return (cq, r);
            }
        }
    }
    for s in subset_family(&cq) {
        if !cq.contains(&q.join_all(s.iter().copied())) {
            r.fail();
            r.push("join-not-closed", q.show_set(&s));
            break;
        }
    }
    (cq, r)
}

pub(crate) fn c_set(q: &Quantale, base: Elem) -> Vec<Elem> {
    q.elements()
        .filter(|&p| q.leq(p, base) && q.tensor(p, q.residual(base, p)) == p)
        .collect()
}

/// `p & (q -> r)` for `p` in `C_q`, asserted equal to `p ∧ r`.
pub fn meet_via_residual(q: &Quantale, base: Elem, p: Elem, r: Elem) -> Result<Elem> {
    if !c_set(q, base).contains(&p) {
        return Err(Error::Precondition(format!("{} is not in C_{}", q.show(p), q.show(base))));
    }
    let v = q.tensor(p, q.residual(base, r));
    if v != q.meet(p, r) {
        return Err(Error::Invariant(format!(
            "p&(q->r) = {} differs from p∧r = {} (p={}, q={}, r={})",
            q.show(v),
            q.show(q.meet(p, r)),
            q.show(p),
            q.show(base),
            q.show(r)
        )));
    }
    Ok(v)
}

/// Invariant pass over a quantale: `unit = top` and `p&q <= p∧q`, and `p&q = p∧q`
/// for idempotent `q`.
pub fn tensor_meet_report(q: &Quantale) -> WitnessReport {
    let mut r = WitnessReport::new("tensor-below-meet", q.name(), "p&q <= p∧q; q idempotent => p&q = p∧q");
    if q.unit() != q.top() {
        r.verdict = Verdict::Warn;
        r.push("unit", "not top");
        return r;
    }
    for p in q.elements() {
        for x in q.elements() {
            let t = q.tensor(p, x);
            let m = q.meet(p, x);
            if !q.leq(t, m) || (q.tensor(x, x) == x && t != m) {
                r.fail();
                r.push("pair", tuple(q, &[p, x]));
                return r;
            }
        }
    }
    r
}
