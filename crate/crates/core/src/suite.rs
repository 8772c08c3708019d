//! The full verification suite over a corpus of quantales.
//!
//! Every quantale yields a fixed, ordered list of reports. Checks that range
//! over a family (all Q-sets up to a size, all pairs of elements, ...) are
//! folded into one report that counts the cases and carries the first failure.
//! Work is spread over a rayon pool, but results are collected in corpus order,
//! so the output does not depend on the number of threads.

use rayon::prelude::*;

use crate::builders::from_builder_name;
use crate::divisible::{
    divisibility, downset_quantale, idempotents, is_divisible, is_frame, meet_via_residual, relative_idempotents,
    tensor_meet_report, underlying_frame_check,
};
use crate::enriched::completion::{cauchy_completion, completion_reports, is_cauchy_complete, isomorphism};
use crate::enriched::functor::{
    cq_functor_exists, enumerate_functors, equalizer_ccsym, restriction_functor_report, terminal_report,
};
use crate::enriched::qset::{enumerate_qsets, QSet};
use crate::enriched::singleton::{duality_report, singletons};
use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::quantaloid::{build_dq, FiniteQuantaloid};
use crate::report::{Verdict, WitnessReport};
use crate::sqleq::build_sqleq;
use crate::topos::{
    cc_subobjects_of_cq, embedding_check, frame_equivalence_check, probe_corpus, pullback_check, span_pushout_object,
    topos_witness,
};

/// Quantales of the default corpus, as builder expressions.
pub const DEFAULT_CORPUS: [&str; 7] = ["luk3", "luk4", "luk5", "chain2", "bool2", "bool3", "luk3xchain2"];

/// Upper bound on the number of candidate hom matrices `|Q|^(k(k+1)/2)` when
/// choosing the largest Q-set size `k` to enumerate exhaustively.
pub const QSET_CANDIDATE_BUDGET: usize = 60_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Quantales above this size get Q-set families of size at most 2.
    pub max_q: usize,
    /// Largest Q-set carrier enumerated.
    pub max_x: usize,
    /// Worker threads.
    pub jobs: usize,
    /// Largest separated Cauchy complete Q-set in the probe corpus.
    pub probe_size: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_q: 6, max_x: 4, jobs: 1, probe_size: 2 }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_q == 0 || self.max_x == 0 || self.jobs == 0 || self.probe_size == 0 {
            return Err(Error::Precondition("suite bounds and job count must be positive".into()));
        }
        Ok(())
    }

    /// Largest `k <= max_x` whose candidate count fits the budget.
    pub fn qset_size_for(&self, q: &Quantale) -> usize {
        let n = q.len().max(1);
        let cap = if n > self.max_q { self.max_x.min(2) } else { self.max_x };
        let mut k = 0;
        while k < cap {
            let cells = ((k + 1) * (k + 2) / 2) as u32;
            match n.checked_pow(cells) {
                Some(c) if c <= QSET_CANDIDATE_BUDGET => k += 1,
                _ => break,
            }
        }
        k
    }
}

pub fn default_corpus() -> Vec<Quantale> {
    DEFAULT_CORPUS.iter().map(|b| from_builder_name(b).expect("default builders are valid")).collect()
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<WitnessReport>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(WitnessReport::passed)
    }

    pub fn warnings(&self) -> usize {
        self.reports.iter().filter(|r| r.verdict == Verdict::Warn).count()
    }

    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| r.verdict == Verdict::Fail).count()
    }
}

pub fn run_suite(corpus: &[Quantale], cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let per_q: Vec<Vec<WitnessReport>> = pool.install(|| corpus.par_iter().map(|q| quantale_suite(q, cfg)).collect());
    Ok(SuiteOutcome { reports: per_q.into_iter().flatten().collect() })
}

fn error_report(check: &str, subject: &str, anchor: &str, e: &Error) -> WitnessReport {
    WitnessReport::new(check, subject, anchor).with_verdict(Verdict::Fail).item("error", e)
}

fn or_error(check: &str, subject: &str, anchor: &str, r: Result<WitnessReport>) -> WitnessReport {
    r.unwrap_or_else(|e| error_report(check, subject, anchor, &e))
}

/// Folds per-case reports into one: worst verdict, case count, first failure.
fn combine(check: &str, subject: &str, anchor: &str, unit: &str, cases: Vec<WitnessReport>) -> WitnessReport {
    let mut out = WitnessReport::new(check, subject, anchor).item(unit, cases.len());
    let worst = cases.iter().map(|r| r.verdict).max().unwrap_or(Verdict::Pass);
    out.verdict = worst;
    if let Some(bad) = cases.iter().find(|r| r.verdict == Verdict::Fail).or(cases.iter().find(|r| r.verdict == Verdict::Warn)) {
        out.push("at", &bad.subject);
        out.witness.extend(bad.witness.iter().cloned());
        out.notes.extend(bad.notes.iter().cloned());
    } else {
        let mut notes: Vec<String> = cases.iter().flat_map(|r| r.notes.iter().cloned()).collect();
        notes.dedup();
        notes.truncate(1);
        out.notes = notes;
    }
    out
}

fn quantale_suite(q: &Quantale, cfg: &SuiteConfig) -> Vec<WitnessReport> {
    let name = q.name();
    let mut out = q.check_axioms();
    if out.iter().any(|r| !r.passed()) {
        out.push(
            WitnessReport::new("suite", name, "quantale axioms hold")
                .with_verdict(Verdict::Warn)
                .note("not a quantale; remaining checks skipped"),
        );
        return out;
    }
    out.push(divisibility(q).report(q));
    if !is_divisible(q) {
        out.push(
            WitnessReport::new("suite", name, "u <= q => u = q&(q->u)")
                .with_verdict(Verdict::Warn)
                .note("not divisible; remaining checks skipped"),
        );
        return out;
    }
    out.extend(divisible_section(q));
    match build_dq(q) {
        Ok(dq) => {
            out.extend(quantaloid_section(q, &dq));
            out.extend(qset_section(q, &dq, cfg));
        }
        Err(e) => out.push(error_report("dq", name, "DQ is a quantaloid", &e)),
    }
    out.extend(topos_section(q, cfg));
    out
}

fn divisible_section(q: &Quantale) -> Vec<WitnessReport> {
    let name = q.name();
    let mut out = vec![idempotents(q).1, tensor_meet_report(q)];
    out.push(or_error("distributivity", name, "p ∧ join S = join {p ∧ s}", underlying_frame_check(q)));
    let frame_rep = match is_frame(q) {
        Ok(f) => WitnessReport::new("frame", name, "every element is idempotent").item("frame", f),
        Err(e) => error_report("frame", name, "every element is idempotent", &e),
    };
    out.push(frame_rep);

    let mut circ_cases = Vec::new();
    let mut c_cases = Vec::new();
    let mut meet_cases = Vec::new();
    for base in q.elements() {
        let sub = format!("{}[q={}]", name, q.show(base));
        let anchor = "(↓q, ∘_q) is a divisible quantale with unit q";
        circ_cases.push(match downset_quantale(q, base) {
            Ok((dq, _)) => {
                let mut r = WitnessReport::new("downset-quantale", &sub, anchor);
                if !dq.is_quantale() || !is_divisible(&dq) {
                    r.fail();
                    r.push("q", q.show(base));
                }
                r
            }
            Err(e) => error_report("downset-quantale", &sub, anchor, &e),
        });
        let (cq, rep) = relative_idempotents(q, base);
        c_cases.push(WitnessReport { subject: sub.clone(), ..rep });
        let mut m = WitnessReport::new("meet-via-residual", &sub, "p ∈ C_q => p&(q->r) = p∧r");
        'm: for &p in &cq {
            for r in q.elements() {
                if let Err(e) = meet_via_residual(q, base, p, r) {
                    m.fail();
                    m.push("error", e);
                    break 'm;
                }
            }
        }
        meet_cases.push(m);
    }
    out.push(combine("downset-quantale", name, "(↓q, ∘_q) is a divisible quantale with unit q", "bases", circ_cases));
    out.push(combine("relative-idempotents-subframe", name, "C_q is a subframe of ↓q", "bases", c_cases));
    out.push(combine("meet-via-residual", name, "p ∈ C_q => p&(q->r) = p∧r", "bases", meet_cases));

    match build_sqleq(q) {
        Ok(sq) => {
            out.extend(sq.order_reports());
            out.extend(sq.meet_reports());
            if matches!(is_frame(q), Ok(true)) {
                out.push(sq.frame_collapse_report());
            }
        }
        Err(e) => out.push(error_report("sqleq", name, "⊑ is a partial order", &e)),
    }
    out
}

fn quantaloid_section(q: &Quantale, dq: &FiniteQuantaloid) -> Vec<WitnessReport> {
    let name = q.name();
    let mut out: Vec<WitnessReport> = dq
        .check_axioms()
        .into_iter()
        .map(|r| WitnessReport { check: format!("dq-{}", r.check), ..r })
        .collect();
    match FiniteQuantaloid::from_quantale(q) {
        Ok(one) => {
            let reps = one.check_axioms();
            out.push(combine("one-object-quantaloid", name, "a quantale is a one-object quantaloid", "laws", reps));
        }
        Err(e) => out.push(error_report("one-object-quantaloid", name, "a quantale is a one-object quantaloid", &e)),
    }
    let anchor = "u* = u↘1_q is the unique right adjoint when one exists; then v∘u = v↙u* and u*∘w = u↘w";
    let mut adj = WitnessReport::new("dq-adjoints", name, anchor);
    let mut left_adjoints = 0;
    let m = dq.object_count();
    'a: for p in 0..m {
        for r in 0..m {
            for u in dq.arrows(p, r) {
                let ex = dq.right_adjoints_exhaustive(u);
                if ex.len() > 1 || dq.right_adjoint_of(u) != ex.first().copied() {
                    adj.fail();
                    adj.push("u", dq.show(u));
                    break 'a;
                }
                if !ex.is_empty() {
                    left_adjoints += 1;
                    match dq.map_calculation_check(u) {
                        Ok(rep) if rep.passed() => {}
                        Ok(rep) => {
                            adj.fail();
                            adj.witness.extend(rep.witness);
                            break 'a;
                        }
                        Err(e) => {
                            adj.fail();
                            adj.push("error", e);
                            break 'a;
                        }
                    }
                }
            }
        }
    }
    adj.push("left-adjoints", left_adjoints);
    out.push(adj);
    out
}

/// Per-Q-set checks, in a fixed order.
fn qset_checks(x: &QSet<'_>, dq: &FiniteQuantaloid) -> Vec<WitnessReport> {
    let sub = x.name();
    let mut out = Vec::new();
    let mut cat_rep = WitnessReport::new("qset-as-dq-category", sub, "a Q-set is a symmetric DQ-category with α(x,x) = |x|");
    match x.to_category(dq) {
        Ok(c) => {
            if !c.is_valid() || !c.is_symmetric() || c.is_separated() != x.is_separated() {
                cat_rep.fail();
            }
        }
        Err(e) => {
            cat_rep.fail();
            cat_rep.push("error", e);
        }
    }
    out.push(cat_rep);
    out.push(or_error("singleton-duality", sub, "ss1–ss4 iff left adjoint", duality_report(x, dq)));
    match completion_reports(x, Some(dq)) {
        Ok(r) => out.extend(r),
        Err(e) => out.push(error_report("completion", sub, "X̂ is a Q-set", &e)),
    }
    out.push(terminal_report(x));
    if x.is_separated() && is_cauchy_complete(x) {
        out.push(or_error("restriction-functor", sub, "p ↦ x_p", restriction_functor_report(x)));
    }
    out
}

fn qset_section(q: &Quantale, dq: &FiniteQuantaloid, cfg: &SuiteConfig) -> Vec<WitnessReport> {
    let name = q.name();
    let k = cfg.qset_size_for(q);
    let mut family = Vec::new();
    for size in 0..=k {
        for (i, x) in enumerate_qsets(q, size).into_iter().enumerate() {
            let label = format!("{}/X{}.{}", name, size, i);
            family.push(x.renamed(label));
        }
    }
    let per_x: Vec<Vec<WitnessReport>> = family.par_iter().map(|x| qset_checks(x, dq)).collect();
    let mut order: Vec<(String, String)> = Vec::new();
    for reps in &per_x {
        for r in reps {
            if !order.iter().any(|(c, _)| *c == r.check) {
                order.push((r.check.clone(), r.anchor.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for (check, anchor) in order {
        let cases: Vec<WitnessReport> = per_x.iter().flatten().filter(|r| r.check == check).cloned().collect();
        let mut rep = combine(&check, name, &anchor, "qsets", cases);
        rep.notes.push(format!("all Q-sets with at most {k} elements"));
        out.push(rep);
    }

    // one-element Q-sets {r}: singletons are C_r and the completion is (C_r,∧)
    let sq = build_sqleq(q).expect("divisible");
    let mut points = Vec::new();
    for r in q.elements() {
        let x = QSet::point(q, r);
        let sub = format!("{}{{{}}}", name, q.show(r));
        let mut rep = WitnessReport::new("point-completion", &sub, "the completion of {q} is (C_q,∧)");
        let ext: Vec<_> = singletons(&x).into_iter().map(|s| s.extent).collect();
        if ext != sq.c(r) {
            rep.fail();
            rep.push("singletons", q.show_set(&ext));
        }
        match cauchy_completion(&x, Some(dq)) {
            Ok(c) if isomorphism(&c.qset, &QSet::meet_on(q, "C", sq.c(r))).is_some() => {}
            Ok(c) => {
                rep.fail();
                rep.push("completion", crate::report::set_string(c.qset.names()));
            }
            Err(e) => {
                rep.fail();
                rep.push("error", e);
            }
        }
        points.push(rep);
    }
    out.push(combine("point-completion", name, "the completion of {q} is (C_q,∧)", "points", points));

    let t = QSet::terminal(q);
    let mut term = WitnessReport::new("terminal-complete", name, "(Q,∧) is separated and Cauchy complete");
    if !t.is_separated() || !is_cauchy_complete(&t) {
        term.fail();
    }
    out.push(term);

    let mut cq = WitnessReport::new("cq-functor", name, "a functor (C_p,∧) -> (C_q,∧) exists iff p ⊑ q, and is unique");
    'c: for p in q.elements() {
        for r in q.elements() {
            if let Err(e) = cq_functor_exists(q, p, r) {
                cq.fail();
                cq.push("error", e);
                break 'c;
            }
        }
    }
    out.push(cq);
    out
}

fn topos_section(q: &Quantale, cfg: &SuiteConfig) -> Vec<WitnessReport> {
    let name = q.name();
    let probes = probe_corpus(q, cfg.probe_size);
    let pairs: Vec<_> = q.elements().flat_map(|p| q.elements().map(move |r| (p, r))).collect();
    let mut out = Vec::new();

    let mut eq_cases = Vec::new();
    for x in probes.iter().filter(|x| x.is_separated() && is_cauchy_complete(x)) {
        let ends = enumerate_functors(x, x);
        for f in &ends {
            for g in &ends {
                let r = equalizer_ccsym(x, x, f, g, &probes).map(|(_, _, rep)| WitnessReport { subject: x.name().into(), ..rep });
                eq_cases.push(or_error("equalizer", x.name(), "E = {x | fx = gx}", r));
            }
        }
    }
    out.push(combine("equalizer", name, "E = {x | fx = gx} is the equalizer in separated Cauchy complete Q-sets", "pairs", eq_cases));

    let subs: Vec<WitnessReport> = q
        .elements()
        .map(|r| {
            let sub = format!("{}[q={}]", name, q.show(r));
            match cc_subobjects_of_cq(q, r) {
                Ok((_, rep)) => WitnessReport { subject: sub, ..rep },
                Err(e) => error_report("cc-subobjects", &sub, "", &e),
            }
        })
        .collect();
    out.push(combine("cc-subobjects", name, "S ⊆ C_q with (S,∧) Cauchy complete => S = C_p for some p ⊑ q", "bases", subs));

    let squares: Vec<[WitnessReport; 3]> = pairs
        .par_iter()
        .map(|&(p, r)| {
            let sub = format!("{}[{},{}]", name, q.show(p), q.show(r));
            let pb = or_error("pullback", &sub, "", pullback_check(q, p, r, &probes));
            let po = or_error("pushout", &sub, "", span_pushout_object(q, p, r, &probes).map(|po| po.report));
            let emb = match (embedding_check(q, p, r), build_sqleq(q)) {
                (Ok(rep), Ok(sq)) => {
                    // the square must fail exactly when p⊓q ≠ p∧q
                    let expect_fail = sq.meet2(p, r) != q.meet(p, r);
                    let embeds = rep.passed();
                    let mut out = WitnessReport::new("embedding", &sub, "");
                    if embeds == expect_fail {
                        out.fail();
                        out.witness = rep.witness;
                    }
                    out.item("embeds", embeds)
                }
                (Err(e), _) | (_, Err(e)) => error_report("embedding", &sub, "", &e),
            };
            [WitnessReport { subject: sub.clone(), ..pb }, WitnessReport { subject: sub, ..po }, emb]
        })
        .collect();
    let note = format!("{} probe Q-sets", probes.len());
    let col = |i: usize| squares.iter().map(|s| s[i].clone()).collect::<Vec<_>>();
    let mut pb = combine("pullback", name, "(C_{p⊓q},∧) is the pullback of (C_p,∧) -> (Q,∧) <- (C_q,∧)", "pairs", col(0));
    pb.notes = vec![note.clone()];
    let mut po = combine("pushout", name, "Ẑ for Z = {p,q}, γ(p,q) = p⊓q, is the pushout over (C_{p⊓q},∧)", "pairs", col(1));
    po.notes = vec![note];
    let emb_cases = col(2);
    let embedded = emb_cases.iter().filter(|r| r.witness_value("embeds") == Some("true")).count();
    let mut emb = combine("embedding", name, "(Z,γ) embeds in (Q,∧) iff p⊓q = p∧q", "pairs", emb_cases);
    emb.push("embedding-pairs", embedded);
    out.extend([pb, po, emb]);

    match frame_equivalence_check(q) {
        Ok(fe) => out.push(fe.report),
        Err(e) => out.push(error_report("frame-equivalence", name, "", &e)),
    }
    let anchor = "Q-Set is a topos iff Q is a frame";
    let cert = match topos_witness(q) {
        Ok(w) => {
            let mut rep = WitnessReport::new("topos-certificate", name, anchor)
                .item("topos", if w.topos { "yes (frame case)" } else { "no" });
            if let Some(e) = &w.q {
                rep.push("q", e);
                rep.witness.extend(w.report.witness.iter().filter(|i| i.label != "q").cloned());
            }
            rep
        }
        Err(e) => error_report("topos-certificate", name, anchor, &e),
    };
    out.push(cert);
    out
}
