//! Finite commutative unital quantales with derived residuals.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{subsets, Elem, FiniteLattice};
use crate::report::{Verdict, WitnessReport};

/// Subsets of a carrier up to this size are enumerated exhaustively; larger
/// carriers are sampled.
pub const EXHAUSTIVE_SUBSET_BOUND: usize = 12;
const SAMPLED_SUBSETS: usize = 4096;
const SAMPLE_SEED: u64 = 0x5155_414e_5441_4c45;

/// A finite commutative unital quantale: a finite lattice with a tensor table
/// `&` and a unit. The residual `p -> q = join { s | p & s <= q }` is derived
/// from the tables, never supplied.
///
/// Construction only checks that the tables are well-formed; the quantale laws
/// are checked by [`Quantale::check_axioms`] so that broken inputs can be
/// reported with a witness instead of being rejected outright.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    name: String,
    names: Vec<String>,
    lattice: FiniteLattice,
    tensor: Vec<Elem>,
    unit: Elem,
    residual: Vec<Elem>,
}

impl Quantale {
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        lattice: FiniteLattice,
        tensor: Vec<Elem>,
        unit: Elem,
    ) -> Result<Self> {
        let n = lattice.len();
        if names.len() != n {
            return Err(Error::Malformed(format!("{} names for {} elements", names.len(), n)));
        }
        let mut seen = HashSet::new();
        for s in &names {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!("bad element name `{s}`")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::Malformed(format!("duplicate element name `{s}`")));
            }
        }
        if tensor.len() != n * n {
            return Err(Error::Malformed(format!("tensor has {} entries, expected {}", tensor.len(), n * n)));
        }
        if let Some(bad) = tensor.iter().find(|e| e.index() >= n) {
            return Err(Error::InvalidElement(bad.index()));
        }
        if unit.index() >= n {
            return Err(Error::InvalidElement(unit.index()));
        }
        let mut residual = vec![lattice.bottom(); n * n];
        for p in lattice.elements() {
            for q in lattice.elements() {
                residual[p.index() * n + q.index()] = lattice.join_all(
                    lattice.elements().filter(|&s| lattice.leq(tensor[p.index() * n + s.index()], q)),
                );
            }
        }
        Ok(Quantale { name: name.into(), names, lattice, tensor, unit, residual })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        self.lattice.elements()
    }

    /// Validates a raw id.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.len() {
            Ok(Elem::new(index))
        } else {
            Err(Error::InvalidElement(index))
        }
    }

    pub fn lookup(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|s| s == name)
            .map(Elem::new)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn show(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn show_set(&self, set: &[Elem]) -> String {
        crate::report::set_string(set.iter().map(|&e| self.show(e)))
    }

    #[inline]
    pub fn tensor(&self, p: Elem, q: Elem) -> Elem {
        self.tensor[p.index() * self.len() + q.index()]
    }

    /// `p -> q`, the largest `s` with `p & s <= q`.
    #[inline]
    pub fn residual(&self, p: Elem, q: Elem) -> Elem {
        self.residual[p.index() * self.len() + q.index()]
    }

    /// Checked variant of [`Quantale::residual`] for raw ids.
    pub fn residual_checked(&self, p: usize, q: usize) -> Result<Elem> {
        Ok(self.residual(self.elem(p)?, self.elem(q)?))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        self.lattice.join_all(items)
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        self.lattice.meet_all(items)
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn tensor_table(&self) -> &[Elem] {
        &self.tensor
    }

    pub fn residual_table(&self) -> &[Elem] {
        &self.residual
    }

    /// Returns a copy with one tensor entry replaced (both `p&q` and `q&p` when `symmetric`).
    pub fn with_tensor_entry(&self, p: Elem, q: Elem, value: Elem, symmetric: bool) -> Result<Quantale> {
        let n = self.len();
        let mut tensor = self.tensor.clone();
        tensor[p.index() * n + q.index()] = value;
        if symmetric {
            tensor[q.index() * n + p.index()] = value;
        }
        Quantale::new(self.name.clone(), self.names.clone(), self.lattice.clone(), tensor, self.unit)
    }

    /// Renamed copy.
    pub fn renamed(mut self, name: impl Into<String>) -> Quantale {
        self.name = name.into();
        self
    }

    /// Subsets of the carrier used by join-distribution style checks:
    /// exhaustive up to [`EXHAUSTIVE_SUBSET_BOUND`], seeded samples above.
    pub fn subset_family(&self, items: &[Elem]) -> Vec<Vec<Elem>> {
        subset_family(items)
    }

    /// Checks associativity, commutativity, unit, join distribution and the
    /// residual adjunction, reporting the first violation of each.
    pub fn check_axioms(&self) -> Vec<WitnessReport> {
        let subject = self.name.as_str();
        let els: Vec<Elem> = self.elements().collect();
        let mut out = Vec::new();

        let mut assoc = WitnessReport::new("associativity", subject, "(p&q)&r = p&(q&r)");
        'a: for &p in &els {
            for &q in &els {
                for &r in &els {
                    let l = self.tensor(self.tensor(p, q), r);
                    let rr = self.tensor(p, self.tensor(q, r));
                    if l != rr {
                        assoc.fail();
                        assoc.push("triple", format!("({},{},{})", self.show(p), self.show(q), self.show(r)));
                        assoc.push("(p&q)&r", self.show(l));
                        assoc.push("p&(q&r)", self.show(rr));
                        break 'a;
                    }
                }
            }
        }
        out.push(assoc);

        let mut comm = WitnessReport::new("commutativity", subject, "p&q = q&p");
        'c: for &p in &els {
            for &q in &els {
                if self.tensor(p, q) != self.tensor(q, p) {
                    comm.fail();
                    comm.push("pair", format!("({},{})", self.show(p), self.show(q)));
                    break 'c;
                }
            }
        }
        out.push(comm);

        let mut unit = WitnessReport::new("unit", subject, "1&q = q");
        if let Some(&q) = els.iter().find(|&&q| self.tensor(self.unit, q) != q) {
            unit.fail();
            unit.push("q", self.show(q));
            unit.push("1&q", self.show(self.tensor(self.unit, q)));
        }
        out.push(unit);

        let mut dist = WitnessReport::new("join-distribution", subject, "p&(join S) = join{p&s | s in S}");
        'd: for &p in &els {
            // binary and empty joins first: they are sufficient, the subset pass is a self-test
            if self.tensor(p, self.bottom()) != self.bottom() {
                dist.fail();
                dist.push("p", self.show(p));
                dist.push("S", "{}");
                break 'd;
            }
            for &a in &els {
                for &b in &els {
                    let l = self.tensor(p, self.join(a, b));
                    let r = self.join(self.tensor(p, a), self.tensor(p, b));
                    if l != r {
                        dist.fail();
                        dist.push("p", self.show(p));
                        dist.push("S", self.show_set(&[a, b]));
                        dist.push("p&(join S)", self.show(l));
                        dist.push("join p&S", self.show(r));
                        break 'd;
                    }
                }
            }
        }
        if dist.passed() {
            'ds: for s in subset_family(&els) {
                for &p in &els {
                    let l = self.tensor(p, self.join_all(s.iter().copied()));
                    let r = self.join_all(s.iter().map(|&x| self.tensor(p, x)));
                    if l != r {
                        dist.fail();
                        dist.push("p", self.show(p));
                        dist.push("S", self.show_set(&s));
                        break 'ds;
                    }
                }
            }
        }
        out.push(dist);

        let mut adj = WitnessReport::new("residual-adjunction", subject, "p&q <= r <=> p <= q->r");
        'r: for &p in &els {
            for &q in &els {
                for &r in &els {
                    if self.leq(self.tensor(p, q), r) != self.leq(p, self.residual(q, r)) {
                        adj.fail();
                        adj.push("triple", format!("({},{},{})", self.show(p), self.show(q), self.show(r)));
                        break 'r;
                    }
                }
            }
        }
        out.push(adj);
        out
    }

    pub fn is_quantale(&self) -> bool {
        self.check_axioms().iter().all(|r| r.verdict == Verdict::Pass)
    }

    /// Cross-checks a user-supplied residual table against the derived one.
    pub fn check_supplied_residual(&self, supplied: &[Elem]) -> WitnessReport {
        let mut r = WitnessReport::new("supplied-residual", &self.name, "q->r = join{s | q&s <= r}");
        for p in self.elements() {
            for q in self.elements() {
                let given = supplied[p.index() * self.len() + q.index()];
                if given != self.residual(p, q) {
                    r.fail();
                    r.push("pair", format!("({},{})", self.show(p), self.show(q)));
                    r.push("supplied", self.show(given));
                    r.push("derived", self.show(self.residual(p, q)));
                    return r;
                }
            }
        }
        r
    }
}

pub(crate) fn subset_family(items: &[Elem]) -> Vec<Vec<Elem>> {
    if items.len() <= EXHAUSTIVE_SUBSET_BOUND {
        return subsets(items).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..SAMPLED_SUBSETS)
        .map(|_| items.iter().copied().filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}
