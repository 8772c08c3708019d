//! Machine-readable check outcomes.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Warn => "WARN",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One labelled value of a witness payload, rendered with the input's element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessItem {
    pub label: String,
    pub value: String,
}

/// Outcome of a single check. A failing report always carries a finite witness
/// that the core modules can re-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub check: String,
    pub subject: String,
    /// The statement being checked, as a formula.
    pub anchor: String,
    pub verdict: Verdict,
    pub witness: Vec<WitnessItem>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl WitnessReport {
    pub fn new(check: impl Into<String>, subject: impl Into<String>, anchor: impl Into<String>) -> Self {
        WitnessReport {
            check: check.into(),
            subject: subject.into(),
            anchor: anchor.into(),
            verdict: Verdict::Pass,
            witness: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn item(mut self, label: impl Into<String>, value: impl fmt::Display) -> Self {
        self.witness.push(WitnessItem { label: label.into(), value: value.to_string() });
        self
    }

    pub fn push(&mut self, label: impl Into<String>, value: impl fmt::Display) {
        self.witness.push(WitnessItem { label: label.into(), value: value.to_string() });
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Downgrades to `Fail` (never upgrades).
    pub fn fail(&mut self) {
        self.verdict = Verdict::Fail;
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn witness_value(&self, label: &str) -> Option<&str> {
        self.witness.iter().find(|w| w.label == label).map(|w| w.value.as_str())
    }

    /// Single-line text rendering used by the CLI.
    pub fn line(&self, verbose: bool) -> String {
        let mut s = format!("[{}] {} {}", self.verdict, self.subject, self.check);
        if !self.witness.is_empty() {
            let w: Vec<String> = self.witness.iter().map(|w| format!("{}={}", w.label, w.value)).collect();
            s.push_str(": ");
            s.push_str(&w.join("; "));
        }
        if !self.notes.is_empty() {
            s.push_str(" (");
            s.push_str(&self.notes.join("; "));
            s.push(')');
        }
        if verbose {
            s.push_str(" | ");
            s.push_str(&self.anchor);
        }
        s
    }
}

pub fn all_pass(reports: &[WitnessReport]) -> bool {
    reports.iter().all(WitnessReport::passed)
}

/// Renders a set of names as `{a,b,c}`.
pub fn set_string<I, S>(items: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let parts: Vec<String> = items.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
