use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_affine-index"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn invariant_of_virtual_trefoil() {
    let v = json(&run(&["invariant", "O1+ O2+ U1+ U2+"]));
    assert_eq!(v["polynomial"], "t^-1 - 2 + t");
    assert_eq!(v["coloring"], "1,0,1,2");
    assert_eq!(v["canonical"], "O1+ O2+ U1+ U2+");
    let ws: Vec<i64> = v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["W"].as_i64().unwrap())
        .collect();
    assert_eq!(ws, [1, -1]);
    assert_eq!(v["vassiliev"]["2"], "1");

    let csv = stdout(&run(&["--format", "csv", "invariant", "O1+ O2+ U1+ U2+"]));
    assert_eq!(
        csv,
        "code,writhe,polynomial,v2,v3,v4\nO1+ O2+ U1+ U2+,2,t^-1 - 2 + t,1,0,1/12\n"
    );
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["invariant", "O1+ O1+"]).status.code(), Some(2));
    assert_eq!(run(&["invariant", "Q1+"]).status.code(), Some(2));
    assert_eq!(
        run(&["link-invariant", "--offsets", "0,0", "O1+ ; U1+"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let err = run(&["invariant", "O1+ O1+"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
    assert!(err.stdout.is_empty());
}

#[test]
fn link_invariant_with_offsets() {
    let v = json(&run(&[
        "link-invariant",
        "--offsets",
        "0,0",
        "O1+ U2+ ; U1+ O2+",
    ]));
    assert_eq!(v["polynomial"], "t^-1 - 2 + t");
    let v = json(&run(&[
        "link-invariant",
        "--offsets",
        "1,0",
        "O1+ U2+ ; U1+ O2+",
    ]));
    assert_eq!(v["polynomial"], "0");
    let v = json(&run(&[
        "link-invariant",
        "--offsets",
        "-1,2",
        "O1+ U2+ ; U1+ O2+",
    ]));
    assert_eq!(v["offsets"], serde_json::json!([-1, 2]));
    let text = stdout(&run(&[
        "--format",
        "text",
        "symbolic-weights",
        "O1+ U2+ ; U1+ O2+",
    ]));
    assert_eq!(text, "c1: -1 + off[0] - off[1]\nc2: 1 + off[1] - off[0]\n");
}

#[test]
fn identical_arguments_give_identical_output() {
    for args in [
        &["--seed", "11", "moves", "--walk", "15", "O1+ O2+ U1+ U2+"][..],
        &["--seed", "3", "verify", "--trials", "5", "--steps", "8"][..],
        &["--format", "text", "flat", "--scan", "3"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = stdout(&run(&[
        "--seed",
        "1",
        "moves",
        "--walk",
        "15",
        "O1+ O2+ U1+ U2+",
    ]));
    let b = stdout(&run(&[
        "--seed",
        "2",
        "moves",
        "--walk",
        "15",
        "O1+ O2+ U1+ U2+",
    ]));
    assert_ne!(a, b);
}

#[test]
fn walk_keeps_the_polynomial() {
    let v = json(&run(&[
        "--seed",
        "5",
        "moves",
        "--walk",
        "12",
        "O1+ O2+ U1+ U2+",
    ]));
    assert_eq!(v["trace"].as_array().unwrap().len(), 12);
    let result = v["result"].as_str().unwrap();
    let p = json(&run(&["invariant", result]));
    assert_eq!(p["polynomial"], "t^-1 - 2 + t");
}

#[test]
fn verify_reports_success() {
    let out = run(&[
        "--format", "csv", "verify", "--trials", "10", "--steps", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "passed,failed,skipped\n50,0,0\n");
}

#[test]
fn batch_matches_single_invocations() {
    let codes = [
        "O1+ O2+ U1+ U2+",
        "O1- U2- O3- U1- O2- U3-",
        "O1+ U2- O3+ U1+ O2- U3+",
        "O1- U1-",
    ];
    let file = temp_file(
        "batch_input.txt",
        &format!(
            "# corpus\n{}\n\n{}\n   \n# more\n{}\n{}\nO1+ O1+\n",
            codes[0], codes[1], codes[2], codes[3]
        ),
    );
    let path = file.to_str().unwrap();

    let batch = json(&run(&["batch", "--input", path]));
    let records = batch.as_array().unwrap();
    assert_eq!(records.len(), codes.len() + 1);
    for (rec, code) in records.iter().zip(codes) {
        assert_eq!(rec["code"], code);
        assert_eq!(rec["result"], json(&run(&["invariant", code])));
    }
    assert!(records[codes.len()]["error"].is_string());

    let csv = run(&["--format", "csv", "batch", "--input", path]);
    let mut expected = String::from("code,writhe,polynomial,v2,v3,v4\n");
    for code in codes {
        let single = stdout(&run(&["--format", "csv", "invariant", code]));
        expected.push_str(single.lines().nth(1).unwrap());
        expected.push('\n');
    }
    assert_eq!(stdout(&csv), expected);
    assert!(String::from_utf8_lossy(&csv.stderr).contains("line 9"));
}

#[test]
fn biquandle_commands() {
    let out = run(&["--format", "text", "biquandle", "search", "5"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 20);
    assert!(text.lines().any(|l| l == "5 1 0 1 1 0 4"));

    let inc = temp_file("increment5.txt", "5 1 0 1 1 0 -1\n");
    let inc = inc.to_str().unwrap();
    let v = json(&run(&["biquandle", "check", inc]));
    assert_eq!(v["flat_biquandle"], true);
    assert_eq!(v["weight_condition"], "pass");
    let v = json(&run(&["biquandle", "color", "R1 R2 L1 L2", inc]));
    assert_eq!(v["count"], 5);

    let pre = temp_file("preflat5.txt", "5 4 3 0 3 2 0\n");
    let v = json(&run(&["biquandle", "check", pre.to_str().unwrap()]));
    assert_eq!(v["preflat"], true);
    assert_eq!(v["flat_biquandle"], false);
    assert_eq!(v["axiom1"], "pass");
    assert!(v["axiom3"].is_object());

    let alpha = temp_file("alpha2.txt", "5 2 0 0 3 0 0\n");
    let v = json(&run(&["biquandle", "check", alpha.to_str().unwrap()]));
    assert_eq!(v["weight_condition"], serde_json::json!([1, 0]));

    let v = json(&run(&["biquandle", "doodle", "O1+ O2+ U1+ U2+", inc]));
    let first = &v["colorings"][0]["vector"];
    assert_eq!(first, &serde_json::json!([-2, 1, 0, 0, 1]));
}

#[test]
fn flat_certificates() {
    let v = json(&run(&["flat", "--certificate", "R1 R2 L1 L2"]));
    assert_eq!(v["certified"], false);
    assert!(v["witness"]["zero_resolution"].is_string());
    let v = json(&run(&["flat", "--certificate", "L1 L2 L3 R1 R3 R2"]));
    assert_eq!(v["certified"], true);
    let v = json(&run(&["flat", "--scan", "4"]));
    assert!(v["checked"].as_u64().unwrap() > 0);
    assert!(v["certified"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c == "L1 L2 L3 R1 R3 R2"));
}

#[test]
fn transforms_and_graphs() {
    let v = json(&run(&["transform", "--mirror", "O1+ O2+ U1+ U2+"]));
    assert_eq!(v["result"], "U1- U2- O1- O2-");
    let v = json(&run(&["graph", "--singular", "1", "O1+ O2+ U1+ U2+"]));
    assert_eq!(v["graph"], "R1 O2+ L1 U2+");
    assert_eq!(v["polynomial"], "t^-1 - 2 + t");
    let v = json(&run(&["vassiliev", "--max-order", "3", "O1+ O2+ U1+ U2+"]));
    assert_eq!(v["vassiliev"]["3"], "0");
    let v = json(&run(&["parse", "L1 R1"]));
    assert_eq!(v["kind"], "flat");
}
