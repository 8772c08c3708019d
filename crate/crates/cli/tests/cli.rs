use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn qlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlab")).args(args).output().expect("qlab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn validate_exit_codes() {
    let ok = qlab(&["validate", &fixture("lukasiewicz3.q")]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));

    let bad = qlab(&["validate", &fixture("nonassoc.q")]);
    assert_eq!(code(&bad), 2);
    let out = stdout(&bad);
    assert!(out.contains("[FAIL] nonassoc associativity: triple=(a,b,b)"), "{out}");

    assert_eq!(code(&qlab(&["validate", "no/such/file.q"])), 1);

    let garbled = qlab(&["validate", &fixture("garbled.q")]);
    assert_eq!(code(&garbled), 1);
    let err = String::from_utf8_lossy(&garbled.stderr);
    assert!(err.contains("line 6, column"), "{err}");
}

#[test]
fn validate_qsets() {
    let o = qlab(&["validate", &fixture("z.qs"), &fixture("broken.qs")]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert!(out.contains("qset z over luk3"));
    assert!(out.contains("[FAIL] broken S1"), "{out}");
}

#[test]
fn qset_over_quantale_file() {
    let dir = tempfile::tempdir().unwrap();
    let qs = dir.path().join("pair.qs");
    let mut f = std::fs::File::create(&qs).unwrap();
    writeln!(f, "qset pair over luk3\nelements: a b\nhom:\nh 0\n0 h").unwrap();
    drop(f);
    let qs = qs.to_string_lossy().into_owned();
    // `h` only names an element of the file-defined quantale, not of the builder.
    assert_eq!(code(&qlab(&["validate", &qs])), 1);
    let o = qlab(&["singletons", &fixture("lukasiewicz3.q"), &qs]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(": 3 singletons"), "{}", stdout(&o));
}

#[test]
fn analyze_reports() {
    let o = qlab(&["analyze", "luk3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("divisible: yes; frame: no; idempotents: {0,1}; 1/2 ⋢ 1"));

    let o = qlab(&["analyze", &fixture("lukasiewicz3.q")]);
    assert!(stdout(&o).contains("idempotents: {0,1}; h ⋢ 1"));

    let o = qlab(&["analyze", "chain2"]);
    assert!(stdout(&o).contains("frame: yes; idempotents: {0,1}; ⊑ = ≤"));

    let o = qlab(&["analyze", "luk4"]);
    assert!(stdout(&o).contains("  C_1 = {0,1}\n"));

    let o = qlab(&["analyze", &fixture("drastic4.q")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("divisible: no"));
}

#[test]
fn singleton_listings() {
    let o = qlab(&["singletons", &fixture("point1.qs")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("(0) extent 0") && out.contains("(1) extent 1"), "{out}");
    assert!(out.contains("not Cauchy complete"));

    let o = qlab(&["singletons", &fixture("meet3.qs")]);
    let out = stdout(&o);
    assert!(out.contains(": 3 singletons") && out.contains("already Cauchy complete"), "{out}");

    let o = qlab(&["singletons", &fixture("empty.qs")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(": 1 singletons\n  () extent 0"));
}

#[test]
fn completion_of_span_object() {
    let o = qlab(&["complete", &fixture("z.qs")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("carrier {(0,0),(0,1),(1/2,0)}"), "{out}");
    assert!(out.contains("𝔶: p ↦ (1/2,0), q ↦ (0,1)"));
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn witness_certificates() {
    let o = qlab(&["witness", "luk3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["  q = 1/2", "  q&(⊤->q) = 0", "  (q⊓⊤,q∧⊤) = (0,1/2)"] {
        assert!(out.contains(line), "{out}");
    }
    let o = qlab(&["witness", "bool3"]);
    assert!(stdout(&o).contains("frame: Q-Set is a topos (frame case)"));
    let o = qlab(&["witness", "luk3xluk3"]);
    assert!(stdout(&o).contains("  q = (0,1/2)"));

    let o = qlab(&["witness", &fixture("drastic4.q")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("divisible=no"));
}

#[test]
fn json_is_one_document() {
    let o = qlab(&["--format", "json", "witness", "luk3", "chain2"]);
    let doc: Value = serde_json::from_slice(&o.stdout).expect("single JSON document");
    assert_eq!(doc["command"], "witness");
    assert_eq!(doc["exit_code"], 0);
    assert_eq!(doc["results"][0]["q"], "1/2");
    assert_eq!(doc["results"][1]["topos"], true);

    let o = qlab(&["--format", "json", "validate", "missing.q"]);
    assert_eq!(code(&o), 1);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["errors"][0]["code"], 1);
}

#[test]
fn verify_exit_codes() {
    let frames = qlab(&["verify", "--corpus", "chain2,bool2", "--max-x", "2"]);
    assert_eq!(code(&frames), 0);
    assert!(!stdout(&frames).contains("[WARN]"));

    let warn = qlab(&["verify", "--corpus", "luk3", "--max-x", "2"]);
    assert_eq!(code(&warn), 0);
    assert!(stdout(&warn).contains("[WARN] luk3 sqcap-empty"));

    let broken = qlab(&["verify", "--corpus", "luk3", "--max-x", "1", &fixture("corrupted.q")]);
    assert_eq!(code(&broken), 3);

    assert_eq!(code(&qlab(&["verify", "--max-x", "0"])), 1);
    assert_eq!(code(&qlab(&["verify", "--corpus", "nonsense"])), 1);
}

#[test]
fn verbose_prints_anchor() {
    let o = qlab(&["--verbose", "validate", "luk3"]);
    assert!(stdout(&o).contains("[PASS] luk3 associativity | (p&q)&r = p&(q&r)"), "{}", stdout(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&qlab(&["frobnicate"])), 1);
    assert_eq!(code(&qlab(&["analyze"])), 1);
    assert_eq!(code(&qlab(&["singletons", "luk3"])), 1);
    assert_eq!(code(&qlab(&["--help"])), 0);
}
