//! Cauchy completion of a Q-set: the Q-set of its singletons.

use crate::divisible::circ;
use crate::enriched::category::{dist_compose, dist_rres, right_adjoint, QCategory};
use crate::enriched::qset::QSet;
use crate::enriched::singleton::{singletons, Singleton};
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::quantaloid::FiniteQuantaloid;
use crate::report::WitnessReport;

/// `X̂` together with its singletons (in carrier order) and the embedding `𝔶`.
#[derive(Clone, Debug)]
pub struct Completion<'q> {
    pub source: QSet<'q>,
    pub qset: QSet<'q>,
    pub singletons: Vec<Singleton>,
    /// `𝔶x` as an index into the completion's carrier.
    pub yoneda: Vec<usize>,
}

impl<'q> Completion<'q> {
    /// Index of the singleton with the given values, if present.
    pub fn position(&self, values: &[Elem]) -> Option<usize> {
        self.singletons.iter().position(|s| s.values == values)
    }

    pub fn extents(&self) -> Vec<Elem> {
        self.singletons.iter().map(|s| s.extent).collect()
    }
}

/// `λ*∘μ = join_x λ(x) ∘_{|x|} μ(x)`, computed directly on quantale elements.
pub fn completion_hom(x: &QSet<'_>, mu: &Singleton, la: &Singleton) -> Result<Elem> {
    let q = x.quantale();
    let mut acc = q.bottom();
    for i in 0..x.len() {
        acc = q.join(acc, circ(q, x.ty(i), la.values[i], mu.values[i])?);
    }
    Ok(acc)
}

/// The hom `α̂(μ,λ)` as `λ↘μ`, `λ*∘μ` and `(λ↘α)∘μ`, each computed with
/// distributor operations over `DQ`.
pub fn completion_hom_forms(x: &QSet<'_>, dq: &FiniteQuantaloid, mu: &Singleton, la: &Singleton) -> Result<[Elem; 3]> {
    let cat = x.to_category(dq)?;
    let m = mu.to_distributor(dq, x)?;
    let l = la.to_distributor(dq, x)?;
    let point = QCategory::point(dq, la.extent.index());
    let a = dist_rres(dq, &l, &m)?;
    let lstar = right_adjoint(dq, &l, &point, &cat)
        .ok_or_else(|| Error::Invariant(format!("{} is not a left adjoint", la.label(x))))?;
    let b = dist_compose(dq, &lstar, &m)?;
    let c = dist_compose(dq, &dist_rres(dq, &l, &cat.identity())?, &m)?;
    Ok([a.m[0], b.m[0], c.m[0]].map(|arr| dq.dq_value(arr)))
}

/// Builds `X̂`. With `dq` given, every hom entry is also computed in the three
/// distributor forms and a disagreement is an [`Error::Invariant`].
pub fn cauchy_completion<'q>(x: &QSet<'q>, dq: Option<&FiniteQuantaloid>) -> Result<Completion<'q>> {
    let q = x.quantale();
    let sing = singletons(x);
    let k = sing.len();
    let mut alpha = Vec::with_capacity(k * k);
    for mu in &sing {
        for la in &sing {
            let v = completion_hom(x, mu, la)?;
            if let Some(dq) = dq {
                let forms = completion_hom_forms(x, dq, mu, la)?;
                if forms.iter().any(|&f| f != v) {
                    return Err(Error::Invariant(format!(
                        "completion hom forms disagree at ({}, {}): direct {}, λ↘μ {}, λ*∘μ {}, (λ↘α)∘μ {}",
                        mu.label(x),
                        la.label(x),
                        q.show(v),
                        q.show(forms[0]),
                        q.show(forms[1]),
                        q.show(forms[2])
                    )));
                }
            }
            alpha.push(v);
        }
    }
    let names = sing.iter().map(|s| s.label(x)).collect();
    let qset = QSet::new(q, format!("{}^", x.name()), names, alpha)?;
    let mut yoneda = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let row: Vec<Elem> = (0..x.len()).map(|j| x.alpha(i, j)).collect();
        let pos = sing.iter().position(|s| s.values == row).ok_or_else(|| {
            Error::Invariant(format!("α({},-) is not a singleton", x.names()[i]))
        })?;
        yoneda.push(pos);
    }
    Ok(Completion { source: x.clone(), qset, singletons: sing, yoneda })
}

/// The element `x` with `α(x,-) = μ`, if `μ` is representable.
pub fn representative(x: &QSet<'_>, values: &[Elem]) -> Option<usize> {
    (0..x.len()).find(|&i| (0..x.len()).all(|j| x.alpha(i, j) == values[j]))
}

/// A singleton that is not of the form `α(x,-)`, if any.
pub fn unrepresentable_singleton(x: &QSet<'_>) -> Option<Singleton> {
    singletons(x).into_iter().find(|s| representative(x, &s.values).is_none())
}

pub fn is_cauchy_complete(x: &QSet<'_>) -> bool {
    unrepresentable_singleton(x).is_none()
}

/// A type- and hom-preserving bijection `a -> b`, if one exists.
pub fn isomorphism(a: &QSet<'_>, b: &QSet<'_>) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut f = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    iso_search(a, b, &mut f, &mut used, 0).then_some(f)
}

fn iso_search(a: &QSet<'_>, b: &QSet<'_>, f: &mut Vec<usize>, used: &mut Vec<bool>, i: usize) -> bool {
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if used[j] || a.ty(i) != b.ty(j) {
            continue;
        }
        if (0..i).all(|k| a.alpha(i, k) == b.alpha(j, f[k]) && a.alpha(k, i) == b.alpha(f[k], j)) {
            f[i] = j;
            used[j] = true;
            if iso_search(a, b, f, used, i + 1) {
                return true;
            }
            used[j] = false;
        }
    }
    f[i] = usize::MAX;
    false
}

/// The completion is a separated, symmetric, Cauchy complete Q-set; `𝔶` is a
/// fully faithful functor, injective on separated inputs; and completing again
/// gives an isomorphic Q-set.
pub fn completion_reports(x: &QSet<'_>, dq: Option<&FiniteQuantaloid>) -> Result<Vec<WitnessReport>> {
    let c = cauchy_completion(x, dq)?;
    let xh = &c.qset;
    let subject = x.name();
    let mut out = Vec::new();

    let mut valid = WitnessReport::new("completion-qset", subject, "(X̂, α̂) satisfies S1–S3")
        .item("size", xh.len());
    if let Some(bad) = xh.validate().into_iter().find(|r| !r.passed()) {
        valid.fail();
        valid.push("axiom", bad.check);
    }
    out.push(valid);

    let mut sep = WitnessReport::new("completion-separated", subject, "X̂ is separated and symmetric");
    if let Some((a, b)) = xh.separation_witness() {
        sep.fail();
        sep.push("pair", format!("({},{})", xh.names()[a], xh.names()[b]));
    }
    if !xh.is_symmetric() {
        sep.fail();
        sep.push("symmetric", "no");
    }
    out.push(sep);

    let mut cc = WitnessReport::new("completion-cauchy-complete", subject, "every singleton on X̂ is α̂(μ,-)");
    if let Some(s) = unrepresentable_singleton(xh) {
        cc.fail();
        cc.push("unrepresentable", s.label(xh));
    }
    out.push(cc);

    let mut ff = WitnessReport::new("yoneda-fully-faithful", subject, "|𝔶x| = |x| and α̂(𝔶x,𝔶y) = α(x,y)");
    'f: for i in 0..x.len() {
        for j in 0..x.len() {
            if xh.alpha(c.yoneda[i], c.yoneda[j]) != x.alpha(i, j) {
                ff.fail();
                ff.push("(x,y)", format!("({},{})", x.names()[i], x.names()[j]));
                break 'f;
            }
        }
    }
    out.push(ff);

    let mut inj = WitnessReport::new("yoneda-injective", subject, "X separated => 𝔶 injective");
    let mut seen = c.yoneda.clone();
    seen.sort_unstable();
    seen.dedup();
    let injective = seen.len() == c.yoneda.len();
    inj.push("separated", x.is_separated());
    inj.push("injective", injective);
    if x.is_separated() && !injective {
        inj.fail();
    }
    out.push(inj);

    let again = cauchy_completion(xh, dq)?;
    let mut idem = WitnessReport::new("completion-idempotent", subject, "X̂^ ≅ X̂");
    if isomorphism(&again.qset, xh).is_none() {
        idem.fail();
        idem.push("sizes", format!("{} vs {}", again.qset.len(), xh.len()));
    }
    out.push(idem);
    Ok(out)
}
