use std::io::Write;
use std::process::{Command, Output, Stdio};

use quiverkit::quiverrep::ReducibilityReport;
use quiverkit::verify::VerifyReport;
use quiverkit::{Partition, QuiverRep};
use serde_json::Value;

fn quiverkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn part_subcommands() {
    let o = quiverkit(&["part", "add", "2,1,1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[3,2]");
    assert_eq!(
        stdout(&quiverkit(&["part", "dual", "5,3,3,1"])).trim(),
        "[4,3,3,1,1]"
    );
    assert_eq!(
        stdout(&quiverkit(&["part", "dom", "3,2", "3,1,1"])).trim(),
        "true"
    );
    assert_eq!(stdout(&quiverkit(&["part", "young", "2,1"])), "[][]\n[]\n");
    assert_eq!(
        stdout(&quiverkit(&["--json", "part", "young", "2,1"])).trim(),
        r#""[][]\n[]""#
    );

    // every partition printed round-trips through the library parser
    let p: Partition =
        serde_json::from_str(&stdout(&quiverkit(&["part", "add", "2,1", "4"]))).unwrap();
    assert_eq!(p, Partition::new(vec![3, 2, 1, 1]).unwrap());
}

#[test]
fn parse_errors_exit_2() {
    let o = quiverkit(&["part", "dual", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(quiverkit(&["dimvec", "mu", "2,2"]).status.code(), Some(2));
    assert_eq!(
        quiverkit(&["--p", "4", "dimvec", "verdict", "1,4,5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dimvec_subcommands() {
    let o = quiverkit(&["dimvec", "verdict", "1,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let report: ReducibilityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.lambda.parts(), &[3, 2]);
    assert_eq!(report.mu.parts(), &[3, 1, 1]);
    for w in &report.witnesses {
        assert!(w.rep.check_relations());
        assert_eq!(w.rep.theta().unwrap().jordan_type().unwrap(), w.theta_type);
    }
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "reducible");

    assert_eq!(
        stdout(&quiverkit(&["dimvec", "classify", "1,2,5,8,12"])).trim(),
        r#"{"tag":"kraft_procesi","eta":[5,3,3,1]}"#
    );
    assert_eq!(
        stdout(&quiverkit(&["dimvec", "slack", "1,2"])).trim(),
        "[0]"
    );
    assert_eq!(
        stdout(&quiverkit(&["dimvec", "lambda", "1,4,5"])).trim(),
        "[3,2]"
    );
    assert_eq!(
        stdout(&quiverkit(&["dimvec", "obstruction", "1,2,5,8,12"])).trim(),
        r#""no_obstruction""#
    );
}

#[test]
fn verify_statements() {
    let o = quiverkit(&["verify", "lemma-step", "--n", "2", "--a", "1", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.pass);
    assert_eq!(r.size, 4096);

    let o = quiverkit(&["verify", "lemma-step", "--n", "1", "--a", "1", "--p", "2"]);
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.size, 16);
    assert_eq!(r.details["maxima"][0]["expected"], serde_json::json!([2]));

    let o = quiverkit(&["verify", "example-reduc"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        r.details["witness_types"],
        serde_json::json!([[3, 2], [3, 1, 1]])
    );

    let o = quiverkit(&["verify", "prop-inject", "--dims", "1,2"]);
    assert_eq!(o.status.code(), Some(0));

    // over budget: refused before starting
    let o = quiverkit(&[
        "verify",
        "lemma-step",
        "--n",
        "2",
        "--a",
        "1",
        "--budget",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rep_check_reads_stdin() {
    let chain = quiverkit(&["rep", "chain", "bab,b,b;babab,bab,a"]);
    let v: Value = serde_json::from_str(&stdout(&chain)).unwrap();
    let rep = serde_json::to_string(&v["rep"]).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_quiverkit"))
        .args(["rep", "check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(rep.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relations"], true);
    assert_eq!(v["nilpotency"], true);
    assert_eq!(v["stable"], false);
    assert_eq!(v["theta_type"], serde_json::json!([3, 2]));
    let z: QuiverRep = serde_json::from_value(v["rep"].clone()).unwrap();
    assert_eq!(serde_json::to_string(&z).unwrap(), rep);
}

#[test]
fn reach_chain_feeds_rep_chain() {
    let o = quiverkit(&["dimvec", "reach", "4,8,9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([3, 3, 2, 1]));
    assert_eq!(v["max"], serde_json::json!([3, 3, 3]));
    let chain: Vec<Vec<String>> = serde_json::from_value(v["max_chain"].clone()).unwrap();
    let arg = chain
        .iter()
        .map(|d| d.join(","))
        .collect::<Vec<_>>()
        .join(";");

    let o = quiverkit(&["--p", "2", "rep", "chain", &arg]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relations"], true);
    assert_eq!(v["theta_type"], serde_json::json!([3, 3, 3]));
}

#[test]
fn sample_output_checks() {
    let dir = std::env::temp_dir().join(format!("quiverkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sample.json");
    let o = quiverkit(&["--seed", "3", "rep", "sample", "1,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, &o.stdout).unwrap();

    let o = quiverkit(&["rep", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relations"], true);
    assert_eq!(v["stable"], true);
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(
        quiverkit(&["rep", "check", "/nonexistent/point.json"])
            .status
            .code(),
        Some(2)
    );
}
