use std::process::{Command, Output};

use ncgram::grammat::{AggregateReport, VerificationReport};
use ncgram::polyalg::Poly;

fn ncgram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgram")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_type_b_lists_six() {
    let o = ncgram(&["enumerate", "--type", "B", "--n", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "{+1}{+2}{-1}{-2}");
    assert!(lines.contains(&"{+1,+2,-1,-2}".to_string()));
}

#[test]
fn verify_theorem_a_n1() {
    let o = ncgram(&["verify", "--check", "theoremA", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS theoremA n=1 pairs=1\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn det_jb1_two_variable() {
    let o = ncgram(&["det", "--kind", "JB", "--n", "1", "--two-variable", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a^2*d^2-a^4\n");
}

#[test]
fn det_json_round_trips() {
    let o = ncgram(&["det", "--kind", "GB", "--n", "2", "--two-variable", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p: Poly = serde_json::from_value(v["det"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&p).unwrap(), v["det"]);
    assert!(!p.is_zero());
}

#[test]
fn sums_report() {
    let o = ncgram(&["verify", "--check", "sums", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("PASS sums n=6"));
    assert!(out.contains("sum bk0 = 462"));
}

#[test]
fn injected_fault_fails_with_pair() {
    let o = ncgram(&["verify", "--check", "theoremB", "--n", "2", "--inject-fault", "zero-circles:3:4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!r.pass);
    let c = r.counterexample.unwrap();
    assert_eq!((c.i, c.j), (Some(3), Some(4)));

    let o = ncgram(&["verify-all", "--inject-fault", "circles:2:3", "--limit", "detSymbolic=2", "--limit", "detEval=2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FIRST FAILURE: FAIL"));
}

#[test]
fn verify_all_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = ncgram(&[
        "verify-all", "--limit", "theoremA=3", "--limit", "theoremB=2", "--limit", "lemma=2",
        "--limit", "detSymbolic=1", "--limit", "detEval=1", "--limit", "detOneVar=1",
        "--limit", "sums=2", "--limit", "annular=2", "--format", "json",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let agg: AggregateReport = serde_json::from_str(&text).unwrap();
    assert!(agg.pass);
    assert_eq!(agg.reports.len(), 3 + 2 + 2 + 1 + 1 + 1 + 2 + 2);
    assert_eq!(serde_json::to_string_pretty(&agg).unwrap() + "\n", text);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["matrix", "--kind", "GB", "--n", "2", "--format", "json"][..],
        &["bijection", "--type", "B", "--n", "2", "--annular"][..],
        &["det", "--kind", "JA", "--n", "4"][..],
    ] {
        let a = ncgram(args);
        let b = ncgram(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["enumerate", "--type", "A", "--n", "3", "--unknown"], 2),
        (&["enumerate", "--type", "A"], 2),
        (&["matrix", "--kind", "XY", "--n", "2"], 2),
        (&["bijection", "--type", "A", "--n", "4", "--partition", "{1,3}{2,4}"], 2),
        (&["bijection", "--type", "A", "--n", "2", "--annular"], 2),
        (&["verify", "--check", "theoremA", "--n", "2", "--method", "evaluation"], 2),
        (&["enumerate", "--type", "B", "--n", "7"], 3),
        (&["matrix", "--kind", "GA", "--n", "9"], 3),
        (&["det", "--kind", "GB", "--n", "4"], 3),
        (&["verify", "--check", "theoremA", "--n", "7"], 3),
        (&["verify", "--check", "det", "--method", "evaluation", "--n", "2"], 0),
    ];
    for (args, code) in cases {
        let o = ncgram(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}");
        if *code != 0 {
            assert!(o.stdout.is_empty() && !o.stderr.is_empty(), "{args:?}");
        }
    }
}
