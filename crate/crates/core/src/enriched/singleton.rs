//! Singletons on a Q-set, found two independent ways: by the conditions ss1–ss4
//! on maps `μ: X -> Q`, and as left adjoint distributors `{q} ⇸ X` over `DQ`.

use std::fmt;

use crate::enriched::category::{right_adjoint, Distributor, QCategory};
use crate::enriched::qset::QSet;
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::quantaloid::{Arrow, FiniteQuantaloid};
use crate::report::WitnessReport;

/// A singleton `μ` with its extent `|μ| = join_x μ(x)`, which is also its type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Singleton {
    pub values: Vec<Elem>,
    pub extent: Elem,
}

impl Singleton {
    /// Renders the value vector as `(v1,v2,...)`.
    pub fn label(&self, x: &QSet<'_>) -> String {
        let q = x.quantale();
        let parts: Vec<&str> = self.values.iter().map(|&v| q.show(v)).collect();
        format!("({})", parts.join(","))
    }

    /// The distributor `{|μ|} ⇸ X` over `DQ`.
    pub fn to_distributor(&self, dq: &FiniteQuantaloid, x: &QSet<'_>) -> Result<Distributor> {
        let mut m = Vec::with_capacity(x.len());
        for (i, &v) in self.values.iter().enumerate() {
            m.push(dq.dq_arrow(self.extent, x.ty(i), v).ok_or_else(|| {
                Error::Domain(format!("μ({}) is not below |μ|∧|x|", x.names()[i]))
            })?);
        }
        let types = (0..x.len()).map(|i| x.ty(i).index()).collect();
        Distributor::new(dq, vec![self.extent.index()], types, m)
    }
}

/// Which ss-condition a map violates, with the offending indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SsFailure {
    Ss1(usize),
    Ss2(usize, usize),
    Ss3,
    Ss4(usize, usize),
}

impl fmt::Display for SsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsFailure::Ss1(x) => write!(f, "ss1 at x={x}"),
            SsFailure::Ss2(x, y) => write!(f, "ss2 at (x,y)=({x},{y})"),
            SsFailure::Ss3 => write!(f, "ss3"),
            SsFailure::Ss4(x, y) => write!(f, "ss4 at (x,y)=({x},{y})"),
        }
    }
}

/// Checks ss1–ss4 for a map `μ`:
/// ss1 `μ(x) <= α(x,x)`, ss2 `μ(x)&(α(x,x)->α(x,y)) <= μ(y)`,
/// ss3 `|μ| <= join_x μ(x)&(α(x,x)->μ(x))`, ss4 `μ(x)&(|μ|->μ(y)) <= α(x,y)`.
pub fn ss_check(x: &QSet<'_>, mu: &[Elem]) -> std::result::Result<(), SsFailure> {
    let q = x.quantale();
    let n = x.len();
    for (i, &m) in mu.iter().enumerate() {
        if !q.leq(m, x.ty(i)) {
            return Err(SsFailure::Ss1(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !ss2_pair(x, mu, i, j) {
                return Err(SsFailure::Ss2(i, j));
            }
        }
    }
    ss34(x, mu)
}

#[inline]
fn ss2_pair(x: &QSet<'_>, mu: &[Elem], i: usize, j: usize) -> bool {
    let q = x.quantale();
    q.leq(q.tensor(mu[i], q.residual(x.ty(i), x.alpha(i, j))), mu[j])
}

fn ss34(x: &QSet<'_>, mu: &[Elem]) -> std::result::Result<(), SsFailure> {
    let q = x.quantale();
    let n = x.len();
    let ext = q.join_all(mu.iter().copied());
    let cover = q.join_all((0..n).map(|i| q.tensor(mu[i], q.residual(x.ty(i), mu[i]))));
    if !q.leq(ext, cover) {
        return Err(SsFailure::Ss3);
    }
    for i in 0..n {
        for j in 0..n {
            if !q.leq(q.tensor(mu[i], q.residual(ext, mu[j])), x.alpha(i, j)) {
                return Err(SsFailure::Ss4(i, j));
            }
        }
    }
    Ok(())
}

/// All singletons by the ss-conditions, sorted by value vector. The search
/// assigns `μ(x) <= α(x,x)` coordinate by coordinate and prunes on ss2.
pub fn singletons(x: &QSet<'_>) -> Vec<Singleton> {
    let q = x.quantale();
    let mut out = Vec::new();
    let mut mu = vec![q.bottom(); x.len()];
    search(x, &mut mu, 0, &mut out);
    out.sort();
    out
}

fn search(x: &QSet<'_>, mu: &mut Vec<Elem>, i: usize, out: &mut Vec<Singleton>) {
    let q = x.quantale();
    if i == x.len() {
        if ss34(x, mu).is_ok() {
            out.push(Singleton { values: mu.clone(), extent: q.join_all(mu.iter().copied()) });
        }
        return;
    }
    for v in q.lattice().down_set(x.ty(i)) {
        mu[i] = v;
        if (0..=i).all(|j| ss2_pair(x, mu, i, j) && ss2_pair(x, mu, j, i)) {
            search(x, mu, i + 1, out);
        }
    }
}

/// All singletons as left adjoint distributors `{q} ⇸ X`, over every object `q`
/// of `DQ`. Each is tagged with its domain `q`, which is not assumed to be the extent.
pub fn singletons_via_adjoints(x: &QSet<'_>, dq: &FiniteQuantaloid) -> Result<Vec<(Elem, Vec<Elem>)>> {
    let cat = x.to_category(dq)?;
    let q = x.quantale();
    let n = x.len();
    let types: Vec<usize> = cat.types().to_vec();
    let mut out = Vec::new();
    for p in q.elements() {
        let point = QCategory::point(dq, p.index());
        let sizes: Vec<usize> = types.iter().map(|&t| dq.hom(p.index(), t).lattice.len()).collect();
        let mut idx = vec![0usize; n];
        'odo: loop {
            let m = (0..n).map(|i| Arrow { src: p.index(), tgt: types[i], idx: idx[i] }).collect();
            let phi = Distributor { dom: vec![p.index()], cod: types.clone(), m };
            if phi.is_distributor_between(dq, &point, &cat) && right_adjoint(dq, &phi, &point, &cat).is_some() {
                out.push((p, phi.m.iter().map(|&a| dq.dq_value(a)).collect::<Vec<Elem>>()));
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'odo;
                }
                idx[i] += 1;
                if idx[i] < sizes[i] {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(out)
}

/// The values of the right adjoint `μ*: X ⇸ {|μ|}`, if `μ` is a left adjoint.
pub fn right_adjoint_values(x: &QSet<'_>, dq: &FiniteQuantaloid, s: &Singleton) -> Result<Option<Vec<Elem>>> {
    let cat = x.to_category(dq)?;
    let point = QCategory::point(dq, s.extent.index());
    let phi = s.to_distributor(dq, x)?;
    Ok(right_adjoint(dq, &phi, &point, &cat).map(|r| r.m.iter().map(|&a| dq.dq_value(a)).collect()))
}

/// Both enumerations coincide (with the domain of every left adjoint equal to
/// its extent) and `μ*(x) = μ(x)` for every singleton.
pub fn duality_report(x: &QSet<'_>, dq: &FiniteQuantaloid) -> Result<WitnessReport> {
    let q = x.quantale();
    let mut rep = WitnessReport::new(
        "singleton-duality",
        x.name(),
        "μ satisfies ss1–ss4 iff μ: {|μ|} ⇸ X is a left adjoint, and then μ*(x) = μ(x)",
    );
    let ss = singletons(x);
    let la = singletons_via_adjoints(x, dq)?;
    rep.push("count", ss.len());
    let ss_pairs: Vec<(Elem, Vec<Elem>)> = ss.iter().map(|s| (s.extent, s.values.clone())).collect();
    if let Some((p, v)) = la.iter().find(|(p, v)| !ss_pairs.contains(&(*p, v.clone()))) {
        rep.fail();
        rep.push("left-adjoint-only", format!("{} of type {}", show_vec(x, v), q.show(*p)));
        return Ok(rep);
    }
    if let Some((_, v)) = ss_pairs.iter().find(|pair| !la.contains(pair)) {
        rep.fail();
        rep.push("ss-only", show_vec(x, v));
        return Ok(rep);
    }
    for s in &ss {
        match right_adjoint_values(x, dq, s)? {
            Some(star) if star == s.values => {}
            other => {
                rep.fail();
                rep.push("μ", s.label(x));
                rep.push("μ*", other.map_or("none".into(), |v| show_vec(x, &v)));
                return Ok(rep);
            }
        }
    }
    Ok(rep)
}

pub(crate) fn show_vec(x: &QSet<'_>, v: &[Elem]) -> String {
    let q = x.quantale();
    let parts: Vec<&str> = v.iter().map(|&e| q.show(e)).collect();
    format!("({})", parts.join(","))
}
