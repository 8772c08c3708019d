//! Functors between Q-sets, their graphs, and the constructions built from them.
//!
//! A functor `f: X -> Y` is a map with `|x| = |fx|` and `α(x,y) <= β(fx,fy)`.

use crate::divisible::{c_set, circ};
use crate::enriched::category::{dist_compose, Distributor};
use crate::enriched::completion::{is_cauchy_complete, representative, Completion};
use crate::enriched::qset::QSet;
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::quantale::Quantale;
use crate::quantaloid::FiniteQuantaloid;
use crate::report::WitnessReport;

/// The first pair `(x, y)` violating the functor conditions (`x == y` for a type clash).
pub fn functor_violation(x: &QSet<'_>, y: &QSet<'_>, f: &[usize]) -> Option<(usize, usize)> {
    let q = x.quantale();
    for a in 0..x.len() {
        if x.ty(a) != y.ty(f[a]) {
            return Some((a, a));
        }
        for b in 0..x.len() {
            if !q.leq(x.alpha(a, b), y.alpha(f[a], f[b])) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_functor(x: &QSet<'_>, y: &QSet<'_>, f: &[usize]) -> bool {
    f.len() == x.len() && f.iter().all(|&v| v < y.len()) && functor_violation(x, y, f).is_none()
}

/// Every functor `X -> Y`, in lexicographic order of the image vector.
pub fn enumerate_functors(x: &QSet<'_>, y: &QSet<'_>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut f = vec![0; x.len()];
    functor_search(x, y, &mut f, 0, &mut out);
    out
}

fn functor_search(x: &QSet<'_>, y: &QSet<'_>, f: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == x.len() {
        out.push(f.clone());
        return;
    }
    let q = x.quantale();
    for c in 0..y.len() {
        if y.ty(c) != x.ty(i) {
            continue;
        }
        f[i] = c;
        if (0..=i).all(|j| q.leq(x.alpha(i, j), y.alpha(c, f[j])) && q.leq(x.alpha(j, i), y.alpha(f[j], c))) {
            functor_search(x, y, f, i + 1, out);
        }
    }
}

/// The graph `f♮(x,y) = β(fx,y)` and cograph `f♮*(y,x) = β(y,fx)` as distributors over `DQ`.
pub fn graph(dq: &FiniteQuantaloid, x: &QSet<'_>, y: &QSet<'_>, f: &[usize]) -> Result<(Distributor, Distributor)> {
    if !is_functor(x, y, f) {
        return Err(Error::Precondition("graph needs a functor".into()));
    }
    let xc = x.to_category(dq)?;
    let yc = y.to_category(dq)?;
    let arrow = |s: Elem, t: Elem, v: Elem| {
        dq.dq_arrow(s, t, v).ok_or_else(|| Error::Invariant("graph entry escapes its hom".into()))
    };
    let mut g = Vec::with_capacity(x.len() * y.len());
    for (a, &fa) in f.iter().enumerate() {
        for b in 0..y.len() {
            g.push(arrow(x.ty(a), y.ty(b), y.alpha(fa, b))?);
        }
    }
    let mut gs = Vec::with_capacity(x.len() * y.len());
    for b in 0..y.len() {
        for (a, &fa) in f.iter().enumerate() {
            gs.push(arrow(y.ty(b), x.ty(a), y.alpha(b, fa))?);
        }
    }
    let phi = Distributor::new(dq, xc.types().to_vec(), yc.types().to_vec(), g)?;
    let psi = Distributor::new(dq, yc.types().to_vec(), xc.types().to_vec(), gs)?;
    let unit = dist_compose(dq, &psi, &phi)?;
    let counit = dist_compose(dq, &phi, &psi)?;
    if !xc.identity().leq(dq, &unit) || !counit.leq(dq, &yc.identity()) {
        return Err(Error::Invariant("f♮ is not left adjoint to f♮*".into()));
    }
    Ok((phi, psi))
}

/// `f♮*∘f♮ = α`, cross-checked against `α(x,x') = β(fx,fx')`.
pub fn fully_faithful(dq: &FiniteQuantaloid, x: &QSet<'_>, y: &QSet<'_>, f: &[usize]) -> Result<bool> {
    let (phi, psi) = graph(dq, x, y, f)?;
    let via_graph = dist_compose(dq, &psi, &phi)? == x.to_category(dq)?.identity();
    let n = x.len();
    let pointwise = (0..n).all(|a| (0..n).all(|b| x.alpha(a, b) == y.alpha(f[a], f[b])));
    if via_graph != pointwise {
        return Err(Error::Invariant("graph and pointwise full faithfulness disagree".into()));
    }
    Ok(pointwise)
}

/// `(f♮∘μ)(y) = join_x β(fx,y) ∘_{|x|} μ(x)`.
pub fn push_forward(x: &QSet<'_>, y: &QSet<'_>, f: &[usize], mu: &[Elem]) -> Result<Vec<Elem>> {
    let q = x.quantale();
    let mut out = Vec::with_capacity(y.len());
    for b in 0..y.len() {
        let mut acc = q.bottom();
        for a in 0..x.len() {
            acc = q.join(acc, circ(q, x.ty(a), y.alpha(f[a], b), mu[a])?);
        }
        out.push(acc);
    }
    Ok(out)
}

/// `f̂: X̂ -> Ŷ`, `μ ↦ f♮∘μ`, as indices into the two completions.
pub fn hat_functor(xc: &Completion<'_>, yc: &Completion<'_>, f: &[usize]) -> Result<Vec<usize>> {
    let (x, y) = (&xc.source, &yc.source);
    if !is_functor(x, y, f) {
        return Err(Error::Precondition("hat_functor needs a functor".into()));
    }
    let mut out = Vec::with_capacity(xc.singletons.len());
    for s in &xc.singletons {
        let img = push_forward(x, y, f, &s.values)?;
        let pos = yc
            .position(&img)
            .ok_or_else(|| Error::Invariant(format!("f♮∘{} is not a singleton on {}", s.label(x), y.name())))?;
        out.push(pos);
    }
    if !is_functor(&xc.qset, &yc.qset, &out) {
        return Err(Error::Invariant("f̂ is not a functor".into()));
    }
    Ok(out)
}

/// The transpose `f̄: X̂ -> Y` of `f: X -> Y` for separated Cauchy complete `Y`:
/// `f̄μ` is the representative of `f♮∘μ`.
pub fn transpose(xc: &Completion<'_>, y: &QSet<'_>, f: &[usize]) -> Result<Vec<usize>> {
    let x = &xc.source;
    if !is_functor(x, y, f) {
        return Err(Error::Precondition("transpose needs a functor".into()));
    }
    if !y.is_separated() || !is_cauchy_complete(y) {
        return Err(Error::Precondition(format!("transpose needs {} separated and Cauchy complete", y.name())));
    }
    let mut out = Vec::with_capacity(xc.singletons.len());
    for s in &xc.singletons {
        let img = push_forward(x, y, f, &s.values)?;
        let r = representative(y, &img)
            .ok_or_else(|| Error::Invariant(format!("f♮∘{} is not representable", s.label(x))))?;
        out.push(r);
    }
    if !is_functor(&xc.qset, y, &out) {
        return Err(Error::Invariant("transpose is not a functor".into()));
    }
    if (0..x.len()).any(|a| out[xc.yoneda[a]] != f[a]) {
        return Err(Error::Invariant("f̄∘𝔶 differs from f".into()));
    }
    Ok(out)
}

/// Composite `g∘f` of index maps.
pub fn compose_maps(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&a| g[a]).collect()
}

fn ccsym(x: &QSet<'_>) -> bool {
    x.is_valid() && x.is_separated() && is_cauchy_complete(x)
}

/// The equalizer `E = {x | fx = gx}` of functors between separated Cauchy
/// complete Q-sets, with a report on its universal property over `probes`.
pub fn equalizer_ccsym<'q>(
    x: &QSet<'q>,
    y: &QSet<'q>,
    f: &[usize],
    g: &[usize],
    probes: &[QSet<'q>],
) -> Result<(QSet<'q>, Vec<usize>, WitnessReport)> {
    if !is_functor(x, y, f) || !is_functor(x, y, g) {
        return Err(Error::Precondition("equalizer needs two functors X -> Y".into()));
    }
    if !ccsym(x) || !ccsym(y) {
        return Err(Error::Precondition("equalizer needs separated, symmetric, Cauchy complete endpoints".into()));
    }
    let idx: Vec<usize> = (0..x.len()).filter(|&a| f[a] == g[a]).collect();
    let e = x.restrict_to(&idx, format!("Eq({})", x.name()));
    let mut rep = WitnessReport::new("equalizer", x.name(), "E = {x | fx = gx} is separated, symmetric, Cauchy complete and universal")
        .item("E", crate::report::set_string(e.names()))
        .note(format!("universal property checked against {} probe Q-sets", probes.len()));
    if !ccsym(&e) {
        rep.fail();
        rep.push("not-cc-sym", e.name());
    }
    'p: for w in probes {
        for h in enumerate_functors(w, x) {
            if compose_maps(f, &h) != compose_maps(g, &h) {
                continue;
            }
            let ks: Vec<Vec<usize>> = enumerate_functors(w, &e)
                .into_iter()
                .filter(|k| compose_maps(&idx, k) == h)
                .collect();
            if ks.len() != 1 {
                rep.fail();
                rep.push("probe", w.name());
                rep.push("mediating-maps", ks.len());
                break 'p;
            }
        }
    }
    Ok((e, idx, rep))
}

/// The unique `x_p` with `α(x_p,x_p) = p` and `α(x_p,y) = α(x,y) ∧ p`, for `p ⊑ α(x,x)`.
pub fn restrict_element(x: &QSet<'_>, xi: usize, p: Elem) -> Result<usize> {
    let q = x.quantale();
    if !c_set(q, x.ty(xi)).contains(&p) {
        return Err(Error::Precondition(format!(
            "{} is not ⊑ |{}| = {}",
            q.show(p),
            x.names()[xi],
            q.show(x.ty(xi))
        )));
    }
    if !x.is_separated() || !is_cauchy_complete(x) {
        return Err(Error::Precondition(format!("{} is not separated and Cauchy complete", x.name())));
    }
    let hits: Vec<usize> = (0..x.len())
        .filter(|&z| x.ty(z) == p && (0..x.len()).all(|y| x.alpha(z, y) == q.meet(x.alpha(xi, y), p)))
        .collect();
    match hits.as_slice() {
        [z] => Ok(*z),
        _ => Err(Error::Invariant(format!("{} restrictions of {} to {}", hits.len(), x.names()[xi], q.show(p)))),
    }
}

/// Whether a functor `(C_p,∧) -> (C_r,∧)` exists: `C_p ⊆ C_r`, asserted
/// equivalent to `p ⊑ r` and to the functor enumeration.
pub fn cq_functor_exists(q: &Quantale, p: Elem, r: Elem) -> Result<bool> {
    let (cp, cr) = (c_set(q, p), c_set(q, r));
    let subset = cp.iter().all(|e| cr.contains(e));
    let sq = cr.contains(&p);
    let fs = enumerate_functors(&QSet::meet_on(q, "Cp", &cp), &QSet::meet_on(q, "Cr", &cr));
    if fs.len() > 1 || subset != sq || sq != (fs.len() == 1) {
        return Err(Error::Invariant(format!(
            "C_p ⊆ C_r ({subset}), p ⊑ r ({sq}) and {} functors disagree at ({},{})",
            fs.len(),
            q.show(p),
            q.show(r)
        )));
    }
    Ok(subset)
}

/// Exactly one functor `X -> (Q,∧)`, namely `x ↦ α(x,x)`.
pub fn terminal_report(x: &QSet<'_>) -> WitnessReport {
    let q = x.quantale();
    let t = QSet::terminal(q);
    let fs = enumerate_functors(x, &t);
    let expected: Vec<usize> = (0..x.len()).map(|a| x.ty(a).index()).collect();
    let mut rep = WitnessReport::new("terminal", x.name(), "the only functor X -> (Q,∧) is x ↦ α(x,x)")
        .item("functors", fs.len());
    if fs != vec![expected] {
        rep.fail();
    }
    rep
}

/// For separated Cauchy complete `X` and each `x`, `p ↦ x_p` is the unique
/// functor `(C_{|x|},∧) -> X` sending `|x|` to `x`.
pub fn restriction_functor_report(x: &QSet<'_>) -> Result<WitnessReport> {
    let q = x.quantale();
    let mut rep = WitnessReport::new(
        "restriction-functor",
        x.name(),
        "p ↦ x_p is the unique functor (C_{|x|},∧) -> X extending x",
    );
    for xi in 0..x.len() {
        let cq = c_set(q, x.ty(xi));
        let src = QSet::meet_on(q, "C", &cq);
        let top = cq.iter().position(|&e| e == x.ty(xi)).expect("q ∈ C_q");
        let bar: Vec<usize> = cq.iter().map(|&p| restrict_element(x, xi, p)).collect::<Result<_>>()?;
        let ext: Vec<Vec<usize>> = enumerate_functors(&src, x).into_iter().filter(|f| f[top] == xi).collect();
        if ext != vec![bar] {
            rep.fail();
            rep.push("x", &x.names()[xi]);
            rep.push("extensions", ext.len());
            break;
        }
    }
    Ok(rep)
}
