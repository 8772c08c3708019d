//! Subobject-lattice consequences of Q-Set being a topos, checked on finite
//! quantales: Cauchy complete subobjects of `(C_q,∧)`, the pullback and pushout
//! squares of `(C_p,∧)` and `(C_q,∧)` over `(Q,∧)`, and the frame equivalence.
//!
//! Universal properties are checked against a finite family of probe Q-sets,
//! never against all objects; every report says how many probes were used.

use serde::Serialize;

use crate::divisible::{divisibility, is_frame, require_divisible, tuple};
use crate::enriched::completion::{cauchy_completion, is_cauchy_complete, Completion};
use crate::enriched::functor::{compose_maps, enumerate_functors, hat_functor, restrict_element, transpose};
use crate::enriched::qset::{enumerate_qsets, QSet};
use crate::error::{Error, Result};
use crate::lattice::{subsets, Elem};
use crate::quantale::Quantale;
use crate::report::{set_string, Verdict, WitnessReport};
use crate::sqleq::build_sqleq;

/// Probe Q-sets for universal-property checks: every separated Cauchy complete
/// Q-set with at most `max_size` elements, plus `(C_r,∧)` for every `r` and `(Q,∧)`.
pub fn probe_corpus(q: &Quantale, max_size: usize) -> Vec<QSet<'_>> {
    let mut out = Vec::new();
    for k in 1..=max_size {
        for x in enumerate_qsets(q, k) {
            if x.is_separated() && is_cauchy_complete(&x) {
                let name = format!("P{}", out.len());
                out.push(x.renamed(name));
            }
        }
    }
    let sq = build_sqleq(q).expect("probe_corpus is only used on divisible quantales");
    for r in q.elements() {
        out.push(QSet::meet_on(q, format!("C_{}", q.show(r)), sq.c(r)));
    }
    out.push(QSet::terminal(q));
    out
}

fn cq_qset<'q>(q: &'q Quantale, cq: &[Elem], r: Elem) -> QSet<'q> {
    QSet::meet_on(q, format!("C_{}", q.show(r)), cq)
}

/// The subsets `S ⊆ C_r` with `(S,∧)` Cauchy complete. Each is checked to be a
/// `⊑`-lower set containing its join, and the family to be `{C_p | p ⊑ r}`.
pub fn cc_subobjects_of_cq(q: &Quantale, r: Elem) -> Result<(Vec<Vec<Elem>>, WitnessReport)> {
    let sq = build_sqleq(q)?;
    let cr = sq.c(r).to_vec();
    let mut rep = WitnessReport::new(
        "cc-subobjects",
        q.name(),
        "S ⊆ C_q with (S,∧) Cauchy complete => S = C_p for some p ⊑ q",
    )
    .item("q", q.show(r));
    let mut family = Vec::new();
    for s in subsets(&cr) {
        if !is_cauchy_complete(&QSet::meet_on(q, "S", &s)) {
            continue;
        }
        let lower = s.iter().all(|&a| q.elements().all(|b| !sq.sqleq(b, a) || s.contains(&b)));
        let top = q.join_all(s.iter().copied());
        if !lower || !s.contains(&top) {
            rep.fail();
            rep.push("bad-subset", q.show_set(&s));
        }
        family.push(s);
    }
    family.sort();
    let mut expected: Vec<Vec<Elem>> = cr.iter().map(|&p| sq.c(p).to_vec()).collect();
    expected.sort();
    rep.push("family", set_string(family.iter().map(|s| q.show_set(s))));
    if family != expected {
        rep.fail();
        rep.push("expected", set_string(expected.iter().map(|s| q.show_set(s))));
    }
    Ok((family, rep))
}

fn inclusion(sub: &[Elem], sup: &[Elem]) -> Option<Vec<usize>> {
    sub.iter().map(|e| sup.iter().position(|x| x == e)).collect()
}

/// `(C_{p⊓r},∧)` is the pullback of the inclusions `(C_p,∧) -> (Q,∧) <- (C_r,∧)`,
/// checked against every cone from `probes`.
pub fn pullback_check(q: &Quantale, p: Elem, r: Elem, probes: &[QSet<'_>]) -> Result<WitnessReport> {
    let sq = build_sqleq(q)?;
    let m = sq.meet2(p, r);
    let (cp, cr, cm) = (sq.c(p).to_vec(), sq.c(r).to_vec(), sq.c(m).to_vec());
    let all: Vec<Elem> = q.elements().collect();
    let mut rep = WitnessReport::new("pullback", q.name(), "(C_{p⊓q},∧) is the pullback of (C_p,∧) -> (Q,∧) <- (C_q,∧)")
        .item("(p,q)", tuple(q, &[p, r]))
        .item("pullback", q.show_set(&cm))
        .note(format!("cones from {} probe Q-sets", probes.len()));
    let inter: Vec<Elem> = cp.iter().copied().filter(|e| cr.contains(e)).collect();
    if inter != cm {
        rep.fail();
        rep.push("C_p∩C_q", q.show_set(&inter));
        return Ok(rep);
    }
    let (Some(mp), Some(mr), Some(ip), Some(ir)) =
        (inclusion(&cm, &cp), inclusion(&cm, &cr), inclusion(&cp, &all), inclusion(&cr, &all))
    else {
        rep.fail();
        rep.push("inclusions", "missing");
        return Ok(rep);
    };
    if compose_maps(&ip, &mp) != compose_maps(&ir, &mr) {
        rep.fail();
        rep.push("square", "does not commute");
        return Ok(rep);
    }
    let (xp, xr, xm) = (cq_qset(q, &cp, p), cq_qset(q, &cr, r), cq_qset(q, &cm, m));
    for probe in probes {
        let fs = enumerate_functors(probe, &xp);
        let gs = enumerate_functors(probe, &xr);
        let hs = enumerate_functors(probe, &xm);
        for f in &fs {
            for g in &gs {
                if compose_maps(&ip, f) != compose_maps(&ir, g) {
                    continue;
                }
                let n = hs
                    .iter()
                    .filter(|h| compose_maps(&mp, h) == *f && compose_maps(&mr, h) == *g)
                    .count();
                if n != 1 {
                    rep.fail();
                    rep.push("probe", probe.name());
                    rep.push("mediating-maps", n);
                    return Ok(rep);
                }
            }
        }
    }
    Ok(rep)
}

/// `Z = {p, r}` with `γ(p,p) = p`, `γ(r,r) = r`, `γ(p,r) = p⊓r`; a single point when `p = r`.
pub fn span_qset(q: &Quantale, p: Elem, r: Elem) -> Result<QSet<'_>> {
    let sq = build_sqleq(q)?;
    if p == r {
        return Ok(QSet::point(q, p).renamed("Z"));
    }
    let m = sq.meet2(p, r);
    QSet::new(q, "Z", vec![q.show(p).to_string(), q.show(r).to_string()], vec![p, m, m, r])
}

/// The pushout object `Ẑ` with its legs `(C_p,∧) -> Ẑ <- (C_r,∧)`.
#[derive(Clone, Debug)]
pub struct Pushout<'q> {
    pub span: QSet<'q>,
    pub completion: Completion<'q>,
    pub leg_p: Vec<usize>,
    pub leg_r: Vec<usize>,
    pub report: WitnessReport,
}

/// The leg `(C_s,∧) -> Ẑ`, `t ↦ γ(s,-) ∧ t`, cross-checked against `ŝ` applied
/// to the inclusion `{s} -> Z` through `C_s ≅ {s}^`.
fn pushout_leg(q: &Quantale, z: &QSet<'_>, zc: &Completion<'_>, zi: usize, cs: &[Elem]) -> Result<Vec<usize>> {
    let s = z.ty(zi);
    let mut leg = Vec::with_capacity(cs.len());
    for &t in cs {
        let vals: Vec<Elem> = (0..z.len()).map(|y| q.meet(z.alpha(zi, y), t)).collect();
        leg.push(zc.position(&vals).ok_or_else(|| Error::Invariant(format!("γ({},-)∧{} is not a singleton", q.show(s), q.show(t))))?);
    }
    let point = QSet::point(q, s);
    let pc = cauchy_completion(&point, None)?;
    let hat = hat_functor(&pc, zc, &[zi])?;
    for (i, sing) in pc.singletons.iter().enumerate() {
        let pos = cs.iter().position(|&t| t == sing.extent).ok_or_else(|| {
            Error::Invariant(format!("{{{}}}^ has a singleton outside C_{}", q.show(s), q.show(s)))
        })?;
        if hat[i] != leg[pos] {
            return Err(Error::Invariant(format!("leg formula and ŝ disagree at {}", q.show(sing.extent))));
        }
    }
    Ok(leg)
}

/// Builds `Ẑ` and checks that it is the pushout of `(C_p,∧) <- (C_{p⊓r},∧) -> (C_r,∧)`
/// against every cocone into a separated Cauchy complete probe.
pub fn span_pushout_object<'q>(q: &'q Quantale, p: Elem, r: Elem, probes: &[QSet<'q>]) -> Result<Pushout<'q>> {
    let sq = build_sqleq(q)?;
    let m = sq.meet2(p, r);
    let (cp, cr, cm) = (sq.c(p).to_vec(), sq.c(r).to_vec(), sq.c(m).to_vec());
    let z = span_qset(q, p, r)?;
    let zc = cauchy_completion(&z, None)?;
    let (zp, zr) = (0, z.len() - 1);
    let leg_p = pushout_leg(q, &z, &zc, zp, &cp)?;
    let leg_r = pushout_leg(q, &z, &zc, zr, &cr)?;
    let mut rep = WitnessReport::new(
        "pushout",
        q.name(),
        "the completion of Z = {p,q}, γ(p,q) = p⊓q, is the pushout of (C_p,∧) <- (C_{p⊓q},∧) -> (C_q,∧)",
    )
    .item("(p,q)", tuple(q, &[p, r]))
    .item("Ẑ", set_string(zc.qset.names()))
    .item("extents", q.show_set(&zc.extents()))
    .note(format!("cocones into {} probe Q-sets", probes.len()));
    if !z.is_valid() {
        rep.fail();
        rep.push("Z", "not a Q-set");
    }
    let (Some(mp), Some(mr)) = (inclusion(&cm, &cp), inclusion(&cm, &cr)) else {
        rep.fail();
        rep.push("inclusions", "missing");
        return Ok(Pushout { span: z, completion: zc, leg_p, leg_r, report: rep });
    };
    if compose_maps(&leg_p, &mp) != compose_maps(&leg_r, &mr) {
        rep.fail();
        rep.push("square", "does not commute");
    }
    'probe: for probe in probes {
        if !probe.is_separated() || !is_cauchy_complete(probe) {
            continue;
        }
        for y in (0..probe.len()).filter(|&i| probe.ty(i) == p) {
            let ybar: Vec<usize> = cp.iter().map(|&t| restrict_element(probe, y, t)).collect::<Result<_>>()?;
            for w in (0..probe.len()).filter(|&i| probe.ty(i) == r) {
                let wbar: Vec<usize> = cr.iter().map(|&t| restrict_element(probe, w, t)).collect::<Result<_>>()?;
                if compose_maps(&ybar, &mp) != compose_maps(&wbar, &mr) {
                    continue;
                }
                let ks: Vec<Vec<usize>> = enumerate_functors(&zc.qset, probe)
                    .into_iter()
                    .filter(|k| compose_maps(k, &leg_p) == ybar && compose_maps(k, &leg_r) == wbar)
                    .collect();
                let h = if z.len() == 1 { vec![y] } else { vec![y, w] };
                let hbar = transpose(&zc, probe, &h)?;
                if ks != vec![hbar] {
                    rep.fail();
                    rep.push("probe", probe.name());
                    rep.push("(y,z)", format!("({},{})", probe.names()[y], probe.names()[w]));
                    rep.push("mediating-maps", ks.len());
                    break 'probe;
                }
            }
        }
    }
    Ok(Pushout { span: z, completion: zc, leg_p, leg_r, report: rep })
}

/// Whether `(Z,γ)` embeds fully faithfully in `(Q,∧)`, which happens exactly
/// when `p⊓r = p∧r`.
pub fn embedding_check(q: &Quantale, p: Elem, r: Elem) -> Result<WitnessReport> {
    let sq = build_sqleq(q)?;
    let z = span_qset(q, p, r)?;
    let t = QSet::terminal(q);
    let ff = enumerate_functors(&z, &t)
        .into_iter()
        .any(|f| (0..z.len()).all(|a| (0..z.len()).all(|b| z.alpha(a, b) == t.alpha(f[a], f[b]))));
    let (sqm, m) = (sq.meet2(p, r), q.meet(p, r));
    let mut rep = WitnessReport::new("embedding", q.name(), "(Z,γ) ↪ (Q,∧) fully faithfully => p⊓q = p∧q")
        .item("(p,q)", tuple(q, &[p, r]))
        .item("(p⊓q,p∧q)", tuple(q, &[sqm, m]));
    if ff != (sqm == m) {
        return Err(Error::Invariant(format!(
            "embedding search ({ff}) and p⊓q = p∧q ({}) disagree at {}",
            sqm == m,
            tuple(q, &[p, r])
        )));
    }
    if !ff {
        rep.fail();
    }
    Ok(rep)
}

/// The three conditions (a) `Q` is a frame, (b) `q ⊑ ⊤` for all `q`,
/// (c) `p⊓q = p∧q` for all `p, q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameEquivalence {
    pub frame: bool,
    pub all_below_top: bool,
    pub sqcap_is_meet: bool,
    pub report: WitnessReport,
}

impl FrameEquivalence {
    pub fn agree(&self) -> bool {
        self.frame == self.all_below_top && self.all_below_top == self.sqcap_is_meet
    }
}

/// Evaluates the three conditions; the report passes iff they agree, and
/// carries a counterexample for each condition that fails.
pub fn frame_equivalence_check(q: &Quantale) -> Result<FrameEquivalence> {
    let sq = build_sqleq(q)?;
    let frame = is_frame(q)?;
    let top = q.top();
    let not_below = q.elements().find(|&e| !sq.sqleq(e, top));
    let pair = q
        .elements()
        .flat_map(|a| q.elements().map(move |b| (a, b)))
        .find(|&(a, b)| sq.meet2(a, b) != q.meet(a, b));
    let mut rep = WitnessReport::new(
        "frame-equivalence",
        q.name(),
        "Q frame <=> q ⊑ ⊤ for all q <=> p⊓q = p∧q for all p,q",
    )
    .item("frame", frame)
    .item("all-below-top", not_below.is_none())
    .item("sqcap-is-meet", pair.is_none());
    if let Some(e) = not_below {
        rep.push("q⋢⊤", q.show(e));
    }
    if let Some((a, b)) = pair {
        rep.push("(p,q)", tuple(q, &[a, b]));
        rep.push("(p⊓q,p∧q)", tuple(q, &[sq.meet2(a, b), q.meet(a, b)]));
    }
    let mut fe = FrameEquivalence { frame, all_below_top: not_below.is_none(), sqcap_is_meet: pair.is_none(), report: rep };
    if !fe.agree() {
        fe.report.fail();
        fe.report.notes.push("conditions disagree".into());
    }
    Ok(fe)
}

/// The certificate that Q-Set is not a topos, or the frame-case verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToposWitness {
    pub topos: bool,
    /// The least non-idempotent element.
    pub q: Option<String>,
    pub report: WitnessReport,
}

/// For a non-frame: the `<=`-least non-idempotent `q` (first in canonical order
/// among the minimal ones), `q&(⊤->q) ≠ q`, the pair `(q⊓⊤, q∧⊤)`, the Cauchy
/// complete subobjects of `(C_⊤,∧)`, and the pushout object for `(q,⊤)` with
/// its failed embedding into `(Q,∧)`.
pub fn topos_witness(q: &Quantale) -> Result<ToposWitness> {
    if let Err(e) = require_divisible(q, "topos_witness") {
        let d = divisibility(q).report(q);
        let w: Vec<String> = d.witness.iter().map(|w| format!("{}={}", w.label, w.value)).collect();
        return Err(Error::Precondition(format!("{e}; divisibility: {}", w.join("; "))));
    }
    let anchor = "Q-Set is a topos iff Q is a frame";
    if is_frame(q)? {
        let rep = WitnessReport::new("topos", q.name(), anchor)
            .item("frame", "yes")
            .note("no obstruction: Q-Set is a topos (frame case)");
        return Ok(ToposWitness { topos: true, q: None, report: rep });
    }
    let sq = build_sqleq(q)?;
    let top = q.top();
    let non_idem: Vec<Elem> = q.elements().filter(|&e| q.tensor(e, e) != e).collect();
    let least = *non_idem
        .iter()
        .find(|&&e| !non_idem.iter().any(|&o| o != e && q.leq(o, e)))
        .expect("a non-frame has a non-idempotent element");
    let cert = q.tensor(least, q.residual(top, least));
    let (subs, _) = cc_subobjects_of_cq(q, top)?;
    let push = span_pushout_object(q, least, top, &[])?;
    let emb = embedding_check(q, least, top)?;
    let rep = WitnessReport::new("topos", q.name(), anchor)
        .with_verdict(Verdict::Fail)
        .item("q", q.show(least))
        .item("q&(⊤->q)", q.show(cert))
        .item("q⊑⊤", sq.sqleq(least, top))
        .item("(q⊓⊤,q∧⊤)", tuple(q, &[sq.meet2(least, top), q.meet(least, top)]))
        .item("Sub(C_⊤)", set_string(subs.iter().map(|s| q.show_set(s))))
        .item("Ẑ", set_string(push.completion.qset.names()))
        .item("Ẑ-extents", q.show_set(&push.completion.extents()))
        .item("Z↪(Q,∧)", if emb.passed() { "yes" } else { "no" })
        .note("not a topos: a consequence of the subobject lattice fails, no specific topos axiom is identified");
    if emb.passed() || sq.sqleq(least, top) {
        return Err(Error::Invariant(format!("certificate for {} is inconsistent", q.name())));
    }
    Ok(ToposWitness { topos: false, q: Some(q.show(least).to_string()), report: rep })
}
