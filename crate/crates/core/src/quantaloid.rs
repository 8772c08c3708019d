//! Finite quantaloids as explicit tables, with `DQ` as the principal instance.
//!
//! Arrows are addressed by their endpoints and a position in the hom-lattice.
//! Residuals and adjoints are computed by enumeration over the finite homs.

use std::fmt;

use crate::divisible::{circ, require_divisible};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;
use crate::report::WitnessReport;

/// An arrow `src -> tgt`; `idx` is its position in `hom(src, tgt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub idx: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    pub lattice: FiniteLattice,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantaloid {
    name: String,
    objects: Vec<String>,
    homs: Vec<HomSet>,
    /// Indexed by `(p*m + q)*m + r`; entry `v*|hom(p,q)| + u` is the index of `v∘u` in `hom(p,r)`.
    compose: Vec<Vec<usize>>,
    identity: Vec<usize>,
    involution: Option<Vec<Vec<usize>>>,
    /// For `DQ`: the quantale element behind each arrow, per hom.
    dq_values: Option<Vec<Vec<Elem>>>,
}

impl FiniteQuantaloid {
    /// Builds a quantaloid from raw tables. Only shapes are validated; the
    /// quantaloid laws are checked by [`FiniteQuantaloid::check_axioms`].
    pub fn from_tables(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: Vec<HomSet>,
        compose: Vec<Vec<usize>>,
        identity: Vec<usize>,
        involution: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let m = objects.len();
        if homs.len() != m * m || compose.len() != m * m * m || identity.len() != m {
            return Err(Error::Malformed("quantaloid table shapes do not match object count".into()));
        }
        for (i, h) in homs.iter().enumerate() {
            if h.labels.len() != h.lattice.len() {
                return Err(Error::Malformed(format!("hom {i}: labels and lattice disagree")));
            }
        }
        let k = FiniteQuantaloid {
            name: name.into(),
            objects,
            homs,
            compose,
            identity,
            involution,
            dq_values: None,
        };
        for p in 0..m {
            if k.identity[p] >= k.hom(p, p).lattice.len() {
                return Err(Error::Malformed(format!("identity of object {p} out of range")));
            }
            for q in 0..m {
                for r in 0..m {
                    let t = &k.compose[(p * m + q) * m + r];
                    let (a, b, c) = (k.hom(p, q).lattice.len(), k.hom(q, r).lattice.len(), k.hom(p, r).lattice.len());
                    if t.len() != a * b || t.iter().any(|&x| x >= c) {
                        return Err(Error::Malformed(format!("composition table ({p},{q},{r}) malformed")));
                    }
                }
                if let Some(inv) = &k.involution {
                    let t = &inv[p * m + q];
                    if t.len() != k.hom(p, q).lattice.len() || t.iter().any(|&x| x >= k.hom(q, p).lattice.len()) {
                        return Err(Error::Malformed(format!("involution table ({p},{q}) malformed")));
                    }
                }
            }
        }
        Ok(k)
    }

    /// The one-object quantaloid of a quantale: homs `Q`, composition `&`, identity the unit.
    pub fn from_quantale(q: &Quantale) -> Result<Self> {
        let homs = vec![HomSet { lattice: q.lattice().clone(), labels: q.names().to_vec() }];
        let compose = vec![q.tensor_table().iter().map(|e| e.index()).collect()];
        let involution = Some(vec![(0..q.len()).collect()]);
        Self::from_tables(q.name(), vec!["*".into()], homs, compose, vec![q.unit().index()], involution)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, p: usize) -> &str {
        &self.objects[p]
    }

    #[inline]
    pub fn hom(&self, p: usize, q: usize) -> &HomSet {
        &self.homs[p * self.objects.len() + q]
    }

    pub fn arrows(&self, p: usize, q: usize) -> impl Iterator<Item = Arrow> + Clone {
        (0..self.hom(p, q).lattice.len()).map(move |idx| Arrow { src: p, tgt: q, idx })
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    pub fn show(&self, a: Arrow) -> String {
        format!("{}:{}->{}", self.hom(a.src, a.tgt).labels[a.idx], self.objects[a.src], self.objects[a.tgt])
    }

    #[inline]
    pub fn identity(&self, p: usize) -> Arrow {
        Arrow { src: p, tgt: p, idx: self.identity[p] }
    }

    /// `v ∘ u` without endpoint checks.
    #[inline]
    pub fn compose_unchecked(&self, v: Arrow, u: Arrow) -> Arrow {
        let m = self.objects.len();
        let (p, q, r) = (u.src, u.tgt, v.tgt);
        let width = self.homs[p * m + q].lattice.len();
        let idx = self.compose[(p * m + q) * m + r][v.idx * width + u.idx];
        Arrow { src: p, tgt: r, idx }
    }

    pub fn compose(&self, v: Arrow, u: Arrow) -> Result<Arrow> {
        if u.tgt != v.src {
            return Err(Error::TypeMismatch(format!("cannot compose {} after {}", self.show(v), self.show(u))));
        }
        Ok(self.compose_unchecked(v, u))
    }

    pub fn involution(&self, u: Arrow) -> Option<Arrow> {
        let m = self.objects.len();
        self.involution
            .as_ref()
            .map(|inv| Arrow { src: u.tgt, tgt: u.src, idx: inv[u.src * m + u.tgt][u.idx] })
    }

    #[inline]
    pub fn leq(&self, a: Arrow, b: Arrow) -> bool {
        debug_assert!(a.src == b.src && a.tgt == b.tgt);
        self.hom(a.src, a.tgt).lattice.leq(Elem::new(a.idx), Elem::new(b.idx))
    }

    #[inline]
    pub fn join(&self, a: Arrow, b: Arrow) -> Arrow {
        let idx = self.hom(a.src, a.tgt).lattice.join(Elem::new(a.idx), Elem::new(b.idx)).index();
        Arrow { idx, ..a }
    }

    #[inline]
    pub fn meet(&self, a: Arrow, b: Arrow) -> Arrow {
        let idx = self.hom(a.src, a.tgt).lattice.meet(Elem::new(a.idx), Elem::new(b.idx)).index();
        Arrow { idx, ..a }
    }

    pub fn bottom(&self, p: usize, q: usize) -> Arrow {
        Arrow { src: p, tgt: q, idx: self.hom(p, q).lattice.bottom().index() }
    }

    pub fn top(&self, p: usize, q: usize) -> Arrow {
        Arrow { src: p, tgt: q, idx: self.hom(p, q).lattice.top().index() }
    }

    pub fn join_all(&self, p: usize, q: usize, items: impl IntoIterator<Item = Arrow>) -> Arrow {
        items.into_iter().fold(self.bottom(p, q), |acc, a| self.join(acc, a))
    }

    pub fn meet_all(&self, p: usize, q: usize, items: impl IntoIterator<Item = Arrow>) -> Arrow {
        items.into_iter().fold(self.top(p, q), |acc, a| self.meet(acc, a))
    }

    /// `w ↙ u = join { v : q -> r | v∘u <= w }` for `u: p -> q`, `w: p -> r`.
    pub fn lres(&self, w: Arrow, u: Arrow) -> Result<Arrow> {
        if u.src != w.src {
            return Err(Error::TypeMismatch(format!("{} ↙ {}: sources differ", self.show(w), self.show(u))));
        }
        let (q, r) = (u.tgt, w.tgt);
        Ok(self.join_all(q, r, self.arrows(q, r).filter(|&v| self.leq(self.compose_unchecked(v, u), w))))
    }

    /// `v ↘ w = join { u : p -> q | v∘u <= w }` for `v: q -> r`, `w: p -> r`.
    pub fn rres(&self, v: Arrow, w: Arrow) -> Result<Arrow> {
        if v.tgt != w.tgt {
            return Err(Error::TypeMismatch(format!("{} ↘ {}: targets differ", self.show(v), self.show(w))));
        }
        let (p, q) = (w.src, v.src);
        Ok(self.join_all(p, q, self.arrows(p, q).filter(|&u| self.leq(self.compose_unchecked(v, u), w))))
    }

    fn is_adjunction(&self, u: Arrow, v: Arrow) -> bool {
        self.leq(self.identity(u.src), self.compose_unchecked(v, u))
            && self.leq(self.compose_unchecked(u, v), self.identity(u.tgt))
    }

    /// `u* = u ↘ 1_q` for `u: p -> q`, returned only when it is a right adjoint of `u`.
    pub fn right_adjoint_of(&self, u: Arrow) -> Option<Arrow> {
        let cand = self.rres(u, self.identity(u.tgt)).expect("u and 1_q share a target");
        self.is_adjunction(u, cand).then_some(cand)
    }

    /// All right adjoints of `u`, by exhaustive search over `hom(q, p)`.
    pub fn right_adjoints_exhaustive(&self, u: Arrow) -> Vec<Arrow> {
        self.arrows(u.tgt, u.src).filter(|&v| self.is_adjunction(u, v)).collect()
    }

    /// Both identities of the map calculation for a left adjoint `u: p -> q`:
    /// `v∘u = v ↙ u*` for all `v: q -> r` and `u*∘w = u ↘ w` for all `w: r -> q`.
    pub fn map_calculation_check(&self, u: Arrow) -> Result<WitnessReport> {
        let ustar = self
            .right_adjoint_of(u)
            .ok_or_else(|| Error::Precondition(format!("{} is not a left adjoint", self.show(u))))?;
        let mut rep = WitnessReport::new("map-calculation", &self.name, "u ⊣ u* => v∘u = v↙u* and u*∘w = u↘w")
            .item("u", self.show(u));
        let m = self.objects.len();
        for r in 0..m {
            for v in self.arrows(u.tgt, r) {
                let lhs = self.compose_unchecked(v, u);
                let rhs = self.lres(v, ustar)?;
                if lhs != rhs {
                    rep.fail();
                    rep.push("v", self.show(v));
                    return Ok(rep);
                }
            }
            for w in self.arrows(r, u.tgt) {
                if self.compose_unchecked(ustar, w) != self.rres(u, w)? {
                    rep.fail();
                    rep.push("w", self.show(w));
                    return Ok(rep);
                }
            }
        }
        Ok(rep)
    }

    /// Category laws, sup-preservation of composition in each variable, and the
    /// involution laws when an involution is present.
    pub fn check_axioms(&self) -> Vec<WitnessReport> {
        let m = self.objects.len();
        let name = self.name.as_str();
        let mut out = Vec::new();

        let mut ident = WitnessReport::new("identity-law", name, "1_q∘u = u = u∘1_p");
        'i: for p in 0..m {
            for q in 0..m {
                for u in self.arrows(p, q) {
                    let l = self.compose_unchecked(self.identity(q), u);
                    let r = self.compose_unchecked(u, self.identity(p));
                    if l != u || r != u {
                        ident.fail();
                        ident.push("u", self.show(u));
                        ident.push("1∘u", self.show(l));
                        ident.push("u∘1", self.show(r));
                        break 'i;
                    }
                }
            }
        }
        out.push(ident);

        let mut assoc = WitnessReport::new("associativity", name, "(w∘v)∘u = w∘(v∘u)");
        'a: for p in 0..m {
            for q in 0..m {
                for r in 0..m {
                    for s in 0..m {
                        for u in self.arrows(p, q) {
                            for v in self.arrows(q, r) {
                                let vu = self.compose_unchecked(v, u);
                                for w in self.arrows(r, s) {
                                    let l = self.compose_unchecked(self.compose_unchecked(w, v), u);
                                    let rr = self.compose_unchecked(w, vu);
                                    if l != rr {
                                        assoc.fail();
                                        assoc.push("u", self.show(u));
                                        assoc.push("v", self.show(v));
                                        assoc.push("w", self.show(w));
                                        break 'a;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out.push(assoc);

        let mut sup = WitnessReport::new("sup-preservation", name, "v∘(join u_i) = join v∘u_i and (join v_i)∘u = join v_i∘u");
        'sp: for p in 0..m {
            for q in 0..m {
                for r in 0..m {
                    for v in self.arrows(q, r) {
                        if self.compose_unchecked(v, self.bottom(p, q)) != self.bottom(p, r) {
                            sup.fail();
                            sup.push("v∘0", self.show(v));
                            break 'sp;
                        }
                    }
                    for u in self.arrows(p, q) {
                        if self.compose_unchecked(self.bottom(q, r), u) != self.bottom(p, r) {
                            sup.fail();
                            sup.push("0∘u", self.show(u));
                            break 'sp;
                        }
                    }
                    for v in self.arrows(q, r) {
                        for u1 in self.arrows(p, q) {
                            for u2 in self.arrows(p, q) {
                                let l = self.compose_unchecked(v, self.join(u1, u2));
                                let rr = self.join(self.compose_unchecked(v, u1), self.compose_unchecked(v, u2));
                                if l != rr {
                                    sup.fail();
                                    sup.push("v", self.show(v));
                                    sup.push("u1", self.show(u1));
                                    sup.push("u2", self.show(u2));
                                    break 'sp;
                                }
                            }
                        }
                    }
                    for u in self.arrows(p, q) {
                        for v1 in self.arrows(q, r) {
                            for v2 in self.arrows(q, r) {
                                let l = self.compose_unchecked(self.join(v1, v2), u);
                                let rr = self.join(self.compose_unchecked(v1, u), self.compose_unchecked(v2, u));
                                if l != rr {
                                    sup.fail();
                                    sup.push("u", self.show(u));
                                    sup.push("v1", self.show(v1));
                                    sup.push("v2", self.show(v2));
                                    break 'sp;
                                }
                            }
                        }
                    }
                }
            }
        }
        out.push(sup);

        if self.involution.is_some() {
            let mut inv = WitnessReport::new("involution", name, "u°° = u, (join u_i)° = join u_i°, (v∘u)° = u°∘v°");
            'v: for p in 0..m {
                for q in 0..m {
                    let inv_of = |a| self.involution(a).expect("present");
                    if inv_of(self.bottom(p, q)) != self.bottom(q, p) {
                        inv.fail();
                        inv.push("bottom", format!("{}->{}", self.objects[p], self.objects[q]));
                        break 'v;
                    }
                    for u in self.arrows(p, q) {
                        if inv_of(inv_of(u)) != u {
                            inv.fail();
                            inv.push("u°°≠u", self.show(u));
                            break 'v;
                        }
                        for u2 in self.arrows(p, q) {
                            if inv_of(self.join(u, u2)) != self.join(inv_of(u), inv_of(u2)) {
                                inv.fail();
                                inv.push("join", format!("{} {}", self.show(u), self.show(u2)));
                                break 'v;
                            }
                        }
                        for r in 0..m {
                            for v in self.arrows(q, r) {
                                let l = inv_of(self.compose_unchecked(v, u));
                                let rr = self.compose_unchecked(inv_of(u), inv_of(v));
                                if l != rr {
                                    inv.fail();
                                    inv.push("u", self.show(u));
                                    inv.push("v", self.show(v));
                                    break 'v;
                                }
                            }
                        }
                    }
                }
            }
            out.push(inv);
        }
        out
    }

    /// Copy with the identity of object `p` replaced by arrow index `idx`.
    pub fn with_identity(&self, p: usize, idx: usize) -> Result<Self> {
        let mut k = self.clone();
        if idx >= k.hom(p, p).lattice.len() {
            return Err(Error::Malformed(format!("identity index {idx} out of range")));
        }
        k.identity[p] = idx;
        Ok(k)
    }

    /// `DQ` only: the arrow `u: p -> q` for an element `u <= p ∧ q`.
    pub fn dq_arrow(&self, p: Elem, q: Elem, u: Elem) -> Option<Arrow> {
        let vals = self.dq_values.as_ref()?;
        let m = self.objects.len();
        let idx = vals[p.index() * m + q.index()].iter().position(|&x| x == u)?;
        Some(Arrow { src: p.index(), tgt: q.index(), idx })
    }

    /// `DQ` only: the quantale element behind an arrow.
    pub fn dq_value(&self, a: Arrow) -> Elem {
        let vals = self.dq_values.as_ref().expect("dq_value on a quantaloid that is not DQ");
        vals[a.src * self.objects.len() + a.tgt][a.idx]
    }

    pub fn is_dq(&self) -> bool {
        self.dq_values.is_some()
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]:{}->{}", self.idx, self.src, self.tgt)
    }
}

/// The involutive quantaloid `DQ` of a divisible quantale: objects are the
/// elements, `hom(p,q) = ↓(p∧q)`, composition `v ∘_q u`, identities `1_q = q`,
/// and the involution sends `u: p -> q` to `u: q -> p`.
pub fn build_dq(q: &Quantale) -> Result<FiniteQuantaloid> {
    require_divisible(q, "build_dq")?;
    let m = q.len();
    let objs: Vec<Elem> = q.elements().collect();
    let mut homs = Vec::with_capacity(m * m);
    let mut values = Vec::with_capacity(m * m);
    for &p in &objs {
        for &r in &objs {
            let down = q.lattice().down_set(q.meet(p, r));
            homs.push(HomSet {
                lattice: q.lattice().restrict(&down)?,
                labels: down.iter().map(|&e| q.show(e).to_string()).collect(),
            });
            values.push(down);
        }
    }
    let mut compose = Vec::with_capacity(m * m * m);
    for &p in &objs {
        for &mid in &objs {
            for &r in &objs {
                let us = &values[p.index() * m + mid.index()];
                let vs = &values[mid.index() * m + r.index()];
                let target = &values[p.index() * m + r.index()];
                let mut table = Vec::with_capacity(us.len() * vs.len());
                for &v in vs {
                    for &u in us {
                        let c = circ(q, mid, v, u)?;
                        let idx = target.iter().position(|&x| x == c).ok_or_else(|| {
                            Error::Invariant(format!("{} ∘ {} escapes hom({},{})", q.show(v), q.show(u), q.show(p), q.show(r)))
                        })?;
                        table.push(idx);
                    }
                }
                compose.push(table);
            }
        }
    }
    let identity = objs
        .iter()
        .map(|&x| values[x.index() * m + x.index()].iter().position(|&v| v == x).expect("q <= q∧q"))
        .collect();
    let mut involution = Vec::with_capacity(m * m);
    for &p in &objs {
        for &r in &objs {
            // hom(p,r) and hom(r,p) are the same down-set, in the same order
            involution.push((0..values[p.index() * m + r.index()].len()).collect());
        }
    }
    let mut k = FiniteQuantaloid::from_tables(
        format!("D{}", q.name()),
        q.names().to_vec(),
        homs,
        compose,
        identity,
        Some(involution),
    )?;
    k.dq_values = Some(values);
    Ok(k)
}
