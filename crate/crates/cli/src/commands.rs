//! The six subcommands. Each returns its exit code and writes to an [`Output`]
//! buffer, so text and JSON renderings come from the same run.

use std::io::{self, Write};

use qlab_core::divisible::{divisibility, idempotents, is_frame};
use qlab_core::enriched::completion::{cauchy_completion, representative};
use qlab_core::enriched::{singletons as enumerate_singletons, QSet};
use qlab_core::quantaloid::build_dq;
use qlab_core::report::set_string;
use qlab_core::sqleq::build_sqleq;
use qlab_core::suite::{default_corpus, run_suite, SuiteConfig};
use qlab_core::topos::topos_witness;
use qlab_core::{Quantale, WitnessReport};
use serde_json::{json, Value};

use crate::input::{load, resolve_over, Input, LoadedQuantale};
use crate::{Cli, Failure, Format};

pub struct Output {
    format: Format,
    verbose: bool,
    lines: Vec<String>,
    results: Vec<Value>,
    errors: Vec<Value>,
}

impl Output {
    pub fn new(format: Format, verbose: bool) -> Self {
        Output { format, verbose, lines: Vec::new(), results: Vec::new(), errors: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn report(&mut self, r: &WitnessReport) {
        let l = format!("  {}", r.line(self.verbose));
        self.lines.push(l);
    }

    fn result(&mut self, v: Value) {
        self.results.push(v);
    }

    /// Records a failure and returns its exit code.
    fn fail(&mut self, f: Failure) -> u8 {
        self.errors.push(json!({ "code": f.code, "message": f.message }));
        self.lines.push(format!("error: {}", f.message));
        f.code
    }

    /// Writes the buffered output. A closed stdout (e.g. piped into `head`) is not an error.
    pub fn finish(self, command: &str, code: u8) {
        let stdout = io::stdout();
        let mut w = stdout.lock();
        match self.format {
            Format::Text => {
                for l in &self.lines {
                    if l.starts_with("error: ") {
                        eprintln!("{l}");
                    } else if writeln!(w, "{l}").is_err() {
                        return;
                    }
                }
            }
            Format::Json => {
                let doc = json!({
                    "command": command,
                    "exit_code": code,
                    "results": self.results,
                    "errors": self.errors,
                });
                let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
                let _ = writeln!(w, "{text}");
            }
        }
        let _ = w.flush();
    }
}

fn reports_json(reports: &[WitnessReport]) -> Value {
    serde_json::to_value(reports).expect("reports serialize")
}

fn require_files(files: &[String], out: &mut Output) -> Option<u8> {
    if files.is_empty() {
        Some(out.fail(Failure::usage("no input files")))
    } else {
        None
    }
}

/// Axiom reports for a loaded quantale, including a supplied residual table.
fn axiom_reports(l: &LoadedQuantale) -> Vec<WitnessReport> {
    let mut reports = l.quantale.check_axioms();
    if let Some(r) = &l.supplied_residual {
        reports.push(l.quantale.check_supplied_residual(r));
    }
    reports
}

/// Prints the failing axiom reports and returns exit code 2, or `None` if all pass.
fn reject_invalid(l: &LoadedQuantale, out: &mut Output) -> Option<u8> {
    let reports = axiom_reports(l);
    if reports.iter().all(WitnessReport::passed) {
        return None;
    }
    out.line(format!("quantale {} ({}): axioms fail", l.quantale.name(), l.source));
    for r in reports.iter().filter(|r| !r.passed()) {
        out.report(r);
    }
    out.result(json!({ "source": l.source, "subject": l.quantale.name(), "valid": false, "reports": reports_json(&reports) }));
    Some(2)
}

pub fn validate(files: &[String], out: &mut Output) -> u8 {
    if let Some(c) = require_files(files, out) {
        return c;
    }
    let mut code = 0;
    let mut loaded: Vec<Quantale> = Vec::new();
    for arg in files {
        match load(arg) {
            Err(f) => code = code.max(out.fail(f)),
            Ok(Input::Quantale(l)) => {
                let reports = axiom_reports(&l);
                let ok = reports.iter().all(WitnessReport::passed);
                out.line(format!(
                    "quantale {} ({}): {}",
                    l.quantale.name(),
                    l.source,
                    if ok { "valid" } else { "axioms fail" }
                ));
                for r in &reports {
                    out.report(r);
                }
                out.result(json!({ "source": l.source, "subject": l.quantale.name(), "valid": ok, "reports": reports_json(&reports) }));
                if !ok {
                    code = code.max(2);
                }
                loaded.push(l.quantale);
            }
            Ok(Input::QSet { source, file }) => match validate_qset(&source, &file, &loaded, out) {
                Ok(c) => code = code.max(c),
                Err(f) => code = code.max(out.fail(f)),
            },
        }
    }
    code
}

fn validate_qset(
    source: &str,
    file: &qlab_core::text::QSetFile,
    loaded: &[Quantale],
    out: &mut Output,
) -> Result<u8, Failure> {
    let q = resolve_over(&file.over, loaded)?;
    if !q.is_quantale() {
        return Err(Failure::math(format!("{source}: {} is not a quantale", q.name())));
    }
    let x = QSet::from_file(&q, file).map_err(|e| Failure::from_core(source, e))?;
    let reports = x.validate();
    let ok = reports.iter().all(WitnessReport::passed);
    out.line(format!(
        "qset {} over {} ({}): {}",
        x.name(),
        q.name(),
        source,
        if ok { "valid" } else { "axioms fail" }
    ));
    for r in &reports {
        out.report(r);
    }
    out.result(json!({ "source": source, "subject": x.name(), "over": q.name(), "valid": ok, "reports": reports_json(&reports) }));
    Ok(if ok { 0 } else { 2 })
}

pub fn analyze(files: &[String], out: &mut Output) -> u8 {
    if let Some(c) = require_files(files, out) {
        return c;
    }
    let mut code = 0;
    for arg in files {
        let l = match load(arg) {
            Ok(Input::Quantale(l)) => l,
            Ok(Input::QSet { source, .. }) => {
                code = code.max(out.fail(Failure::usage(format!("{source}: analyze expects a quantale"))));
                continue;
            }
            Err(f) => {
                code = code.max(out.fail(f));
                continue;
            }
        };
        if let Some(c) = reject_invalid(&l, out) {
            code = code.max(c);
            continue;
        }
        if let Err(f) = analyze_one(&l, out) {
            code = code.max(out.fail(f));
        }
    }
    code
}

fn analyze_one(l: &LoadedQuantale, out: &mut Output) -> Result<(), Failure> {
    let q = &l.quantale;
    let core = |e| Failure::from_core(&l.source, e);
    let div = divisibility(q);
    let div_rep = div.report(q);
    let (idem, idem_rep) = idempotents(q);
    let frame = div.divisible() && is_frame(q).map_err(core)?;
    let idem_set = q.show_set(&idem);
    let yes_no = |b: bool| if b { "yes" } else { "no" };

    out.line(format!("quantale {} ({}, {} elements)", q.name(), l.source, q.len()));
    if !div.divisible() {
        out.line(format!("divisible: no; frame: no; idempotents: {idem_set}"));
        out.report(&div_rep);
        out.report(&idem_rep);
        out.result(json!({
            "source": l.source,
            "subject": q.name(),
            "divisible": false,
            "frame": false,
            "idempotents": idem.iter().map(|&e| q.show(e)).collect::<Vec<_>>(),
            "reports": reports_json(&[div_rep, idem_rep]),
        }));
        return Ok(());
    }

    let sq = build_sqleq(q).map_err(core)?;
    let order_gaps: Vec<String> = q
        .elements()
        .flat_map(|a| q.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && q.leq(a, b) && !sq.sqleq(a, b))
        .map(|(a, b)| format!("{} ⋢ {}", q.show(a), q.show(b)))
        .collect();
    let order_summary = if order_gaps.is_empty() { "⊑ = ≤".to_string() } else { order_gaps.join(", ") };
    out.line(format!(
        "divisible: yes; frame: {}; idempotents: {idem_set}; {order_summary}",
        yes_no(frame)
    ));
    out.report(&div_rep);
    out.report(&idem_rep);

    let hasse: Vec<(String, String)> =
        sq.hasse().into_iter().map(|(a, b)| (q.show(a).to_string(), q.show(b).to_string())).collect();
    let edges: Vec<String> = hasse.iter().map(|(a, b)| format!("{a} ⊑ {b}")).collect();
    out.line(format!("⊑ covers: {}", if edges.is_empty() { "none".to_string() } else { edges.join(", ") }));

    out.line("C_q:");
    let mut c_table = serde_json::Map::new();
    for e in q.elements() {
        let c = sq.c(e);
        out.line(format!("  C_{} = {}", q.show(e), q.show_set(c)));
        c_table.insert(q.show(e).to_string(), json!(c.iter().map(|&x| q.show(x)).collect::<Vec<_>>()));
    }

    out.line("⊓:");
    let width = q.names().iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let header: Vec<String> = q.names().iter().map(|s| pad(s)).collect();
    out.line(format!("  {} | {}", pad(""), header.join(" ")));
    let mut meet_table = Vec::new();
    for a in q.elements() {
        let row: Vec<&str> = q.elements().map(|b| q.show(sq.meet2(a, b))).collect();
        out.line(format!("  {} | {}", pad(q.show(a)), row.iter().map(|s| pad(s)).collect::<Vec<_>>().join(" ")));
        meet_table.push(json!(row));
    }

    let mut reports = vec![div_rep, idem_rep];
    let extra: Vec<WitnessReport> = sq.order_reports().into_iter().chain(sq.meet_reports()).collect();
    for r in &extra {
        out.report(r);
    }
    reports.extend(extra);
    out.result(json!({
        "source": l.source,
        "subject": q.name(),
        "divisible": true,
        "frame": frame,
        "idempotents": idem.iter().map(|&e| q.show(e)).collect::<Vec<_>>(),
        "sqleq_equals_leq": order_gaps.is_empty(),
        "sqleq_gaps": order_gaps,
        "sqleq_covers": hasse,
        "c_sets": c_table,
        "sqcap": meet_table,
        "reports": reports_json(&reports),
    }));
    Ok(())
}

/// `singletons` and, with `complete`, the Cauchy completion.
pub fn singletons(files: &[String], complete: bool, out: &mut Output) -> u8 {
    if let Some(c) = require_files(files, out) {
        return c;
    }
    let mut code = 0;
    let mut loaded: Vec<Quantale> = Vec::new();
    let mut saw_qset = false;
    for arg in files {
        match load(arg) {
            Err(f) => code = code.max(out.fail(f)),
            Ok(Input::Quantale(l)) => loaded.push(l.quantale),
            Ok(Input::QSet { source, file }) => {
                saw_qset = true;
                match singletons_one(&source, &file, &loaded, complete, out) {
                    Ok(c) => code = code.max(c),
                    Err(f) => code = code.max(out.fail(f)),
                }
            }
        }
    }
    if !saw_qset && code == 0 {
        code = out.fail(Failure::usage("no Q-set file given"));
    }
    code
}

fn singletons_one(
    source: &str,
    file: &qlab_core::text::QSetFile,
    loaded: &[Quantale],
    complete: bool,
    out: &mut Output,
) -> Result<u8, Failure> {
    let q = resolve_over(&file.over, loaded)?;
    if !q.is_quantale() {
        return Err(Failure::math(format!("{source}: {} is not a quantale", q.name())));
    }
    let div = divisibility(&q);
    if !div.divisible() {
        out.line(format!("qset {} over {}: the quantale is not divisible", file.name, q.name()));
        let rep = div.report(&q);
        out.report(&rep);
        out.result(json!({ "source": source, "subject": file.name, "reports": reports_json(&[rep]) }));
        return Ok(2);
    }
    let x = QSet::from_file(&q, file).map_err(|e| Failure::from_core(source, e))?;
    let axioms = x.validate();
    if !axioms.iter().all(WitnessReport::passed) {
        out.line(format!("qset {} over {} ({}): axioms fail", x.name(), q.name(), source));
        for r in axioms.iter().filter(|r| !r.passed()) {
            out.report(r);
        }
        out.result(json!({ "source": source, "subject": x.name(), "valid": false, "reports": reports_json(&axioms) }));
        return Ok(2);
    }

    let ss = enumerate_singletons(&x);
    let cc = ss.iter().all(|s| representative(&x, &s.values).is_some());
    out.line(format!("qset {} over {} ({}): {} singletons", x.name(), q.name(), source, ss.len()));
    let mut listed = Vec::new();
    for s in &ss {
        let rep = representative(&x, &s.values).map(|i| x.names()[i].clone());
        let tail = match &rep {
            Some(n) => format!(" = α({n},-)"),
            None => " (not representable)".to_string(),
        };
        out.line(format!("  {} extent {}{tail}", s.label(&x), q.show(s.extent)));
        listed.push(json!({
            "values": s.values.iter().map(|&e| q.show(e)).collect::<Vec<_>>(),
            "extent": q.show(s.extent),
            "representative": rep,
        }));
    }
    out.line(if cc { "already Cauchy complete" } else { "not Cauchy complete" });
    let mut doc = json!({
        "source": source,
        "subject": x.name(),
        "over": q.name(),
        "singletons": listed,
        "cauchy_complete": cc,
    });

    if complete {
        let dq = build_dq(&q).map_err(|e| Failure::from_core(source, e))?;
        let c = cauchy_completion(&x, Some(&dq)).map_err(|e| Failure::from_core(source, e))?;
        let xh = &c.qset;
        let extents: Vec<&str> = (0..xh.len()).map(|i| q.show(xh.ty(i))).collect();
        out.line(format!("completion {}: carrier {}", xh.name(), set_string(xh.names())));
        out.line("hom:");
        for row in xh.matrix_rows() {
            out.line(format!("  {row}"));
        }
        let yo: Vec<(String, String)> =
            (0..x.len()).map(|i| (x.names()[i].clone(), xh.names()[c.yoneda[i]].clone())).collect();
        out.line(format!(
            "𝔶: {}",
            if yo.is_empty() {
                "empty".to_string()
            } else {
                yo.iter().map(|(a, b)| format!("{a} ↦ {b}")).collect::<Vec<_>>().join(", ")
            }
        ));
        let reports = qlab_core::enriched::completion::completion_reports(&x, Some(&dq))
            .map_err(|e| Failure::from_core(source, e))?;
        for r in &reports {
            out.report(r);
        }
        let failed = !reports.iter().all(WitnessReport::passed);
        let hom: Vec<Vec<&str>> =
            (0..xh.len()).map(|i| (0..xh.len()).map(|j| q.show(xh.alpha(i, j))).collect()).collect();
        doc["completion"] = json!({
            "carrier": xh.names(),
            "extents": extents,
            "hom": hom,
            "yoneda": yo,
            "reports": reports_json(&reports),
        });
        out.result(doc);
        return Ok(if failed { 3 } else { 0 });
    }
    out.result(doc);
    Ok(0)
}

pub fn verify(cli: &Cli, files: &[String], out: &mut Output) -> u8 {
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = SuiteConfig { max_q: cli.max_q, max_x: cli.max_x, jobs, probe_size: cli.probe_size };
    if let Err(e) = cfg.validate() {
        return out.fail(Failure::usage(format!("configuration: {e}")));
    }
    let mut corpus = match &cli.corpus {
        None => default_corpus(),
        Some(spec) => {
            let mut qs = Vec::new();
            for entry in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match load(entry) {
                    Ok(Input::Quantale(l)) => qs.push(l.quantale),
                    Ok(Input::QSet { source, .. }) => {
                        return out.fail(Failure::usage(format!("{source}: corpus entries must be quantales")))
                    }
                    Err(f) => return out.fail(f),
                }
            }
            qs
        }
    };
    for arg in files {
        match load(arg) {
            Ok(Input::Quantale(l)) => corpus.push(l.quantale),
            Ok(Input::QSet { source, .. }) => {
                return out.fail(Failure::usage(format!("{source}: corpus entries must be quantales")))
            }
            Err(f) => return out.fail(f),
        }
    }
    if corpus.is_empty() {
        return out.fail(Failure::usage("empty corpus"));
    }
    let outcome = match run_suite(&corpus, &cfg) {
        Ok(o) => o,
        Err(e) => return out.fail(Failure::from_core("verify", e)),
    };
    let names: Vec<&str> = corpus.iter().map(Quantale::name).collect();
    out.line(format!("corpus: {}", names.join(", ")));
    for r in &outcome.reports {
        out.line(r.line(out.verbose));
    }
    let (total, warns, fails) = (outcome.reports.len(), outcome.warnings(), outcome.failures());
    out.line(format!("{total} checks: {} passed, {warns} warnings, {fails} failures", total - warns - fails));
    out.result(json!({
        "corpus": names,
        "max_q": cfg.max_q,
        "max_x": cfg.max_x,
        "probe_size": cfg.probe_size,
        "checks": total,
        "warnings": warns,
        "failures": fails,
        "reports": reports_json(&outcome.reports),
    }));
    if outcome.passed() {
        0
    } else {
        3
    }
}

pub fn witness(files: &[String], out: &mut Output) -> u8 {
    if let Some(c) = require_files(files, out) {
        return c;
    }
    let mut code = 0;
    for arg in files {
        let l = match load(arg) {
            Ok(Input::Quantale(l)) => l,
            Ok(Input::QSet { source, .. }) => {
                code = code.max(out.fail(Failure::usage(format!("{source}: witness expects a quantale"))));
                continue;
            }
            Err(f) => {
                code = code.max(out.fail(f));
                continue;
            }
        };
        if let Some(c) = reject_invalid(&l, out) {
            code = code.max(c);
            continue;
        }
        let q = &l.quantale;
        let div = divisibility(q);
        if !div.divisible() {
            let rep = div.report(q);
            out.line(format!("quantale {} ({}): not divisible", q.name(), l.source));
            out.report(&rep);
            out.result(json!({ "source": l.source, "subject": q.name(), "divisible": false, "reports": reports_json(&[rep]) }));
            code = code.max(2);
            continue;
        }
        let w = match topos_witness(q) {
            Ok(w) => w,
            Err(e) => {
                code = code.max(out.fail(Failure::from_core(&l.source, e)));
                continue;
            }
        };
        out.line(format!("quantale {} ({})", q.name(), l.source));
        if w.topos {
            out.line("frame: Q-Set is a topos (frame case)");
        } else {
            out.line("not a frame: Q-Set is not a topos");
            for item in &w.report.witness {
                out.line(format!("  {} = {}", item.label, item.value));
            }
            for n in &w.report.notes {
                out.line(format!("  {n}"));
            }
        }
        if out.verbose {
            out.line(format!("  | {}", w.report.anchor));
        }
        out.result(json!({
            "source": l.source,
            "subject": q.name(),
            "topos": w.topos,
            "q": w.q,
            "report": w.report,
        }));
    }
    code
}
