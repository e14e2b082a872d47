use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

#[test]
fn sens_isolated_vertex_witness() {
    let v = json(&[
        "sens",
        "--property",
        "isolated-vertex",
        "--v",
        "5",
        "--input",
        "witness",
    ]);
    assert_eq!(v["s_at_x"], 4);
}

#[test]
fn bsens_rubinstein_zeros() {
    let v = json(&[
        "bsens",
        "--property",
        "rubinstein",
        "--k",
        "4",
        "--input",
        "zeros",
        "--mode",
        "exact",
    ]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["verified"], true);
}

#[test]
fn family_q3() {
    let v = json(&["family", "--q", "3", "--d", "2", "--ell", "1"]);
    assert_eq!(v["sets"].as_array().unwrap().len(), 9);
    assert_eq!(v["verified"], true);
}

#[test]
fn eval_and_witness_succeed() {
    let v = json(&[
        "eval",
        "--property",
        "isolated-triangle",
        "--v",
        "5",
        "--input",
        "witness",
    ]);
    assert!(v.is_object());
    let w = json(&["witness", "--construction", "triangle-packing", "--v", "9"]);
    assert!(w.is_object());
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(code(&["sens", "--v", "5"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    assert_eq!(
        code(&["family", "--q", "3", "--d", "2", "--ell", "1", "--format", "csv"]),
        Some(2)
    );
    assert_eq!(
        code(&["witness", "--construction", "nope", "--v", "9"]),
        Some(2)
    );
    // domain errors
    assert_eq!(
        code(&["family", "--q", "6", "--d", "2", "--ell", "1"]),
        Some(1)
    );
    assert_eq!(
        code(&["sens", "--property", "rubinstein", "--k", "3"]),
        Some(1)
    );
    assert_eq!(
        code(&["witness", "--construction", "triangle-packing", "--v", "2"]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "eval",
            "--property",
            "isolated-vertex",
            "--v",
            "4",
            "--input",
            "101"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "bsens",
            "--property",
            "isolated-triangle",
            "--v",
            "8",
            "--mode",
            "global"
        ]),
        Some(1)
    );
    // success
    assert_eq!(code(&["selftest"]), Some(0));
}

#[test]
fn random_input_is_seeded() {
    let args = [
        "--seed",
        "7",
        "sens",
        "--property",
        "isolated-triangle",
        "--v",
        "7",
        "--input",
        "random",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "--seed",
        "8",
        "sens",
        "--property",
        "isolated-triangle",
        "--v",
        "7",
        "--input",
        "random",
    ]);
    let da: Value = serde_json::from_slice(&a.stdout).unwrap();
    let dc: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_ne!(da["digest"], dc["digest"]);
}

#[test]
fn scan_csv_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let p = path.to_str().unwrap();
    let args = [
        "--format",
        "csv",
        "--out",
        p,
        "scan",
        "--property",
        "isolated-triangle",
        "--vs",
        "9,15,21",
    ];
    assert_eq!(code(&args), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(code(&args), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);

    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("v,n,s_lower,s_exact,bs_lower,bs_exact,ms_s,ms_bs\n"));
    assert!(text.contains("9,36,21,,12,,,"));
    let rows = hypersens::experiments::rows_from_csv(&text).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(hypersens::experiments::rows_to_csv(&rows).unwrap(), text);
}

#[test]
fn scan_json_reports_fits() {
    let v = json(&[
        "scan",
        "--property",
        "isolated-triangle",
        "--v-from",
        "9",
        "--v-to",
        "33",
        "--v-step",
        "6",
    ]);
    let slope = v["fits"]["bs_lower"]["slope"].as_f64().unwrap();
    assert!((1.9..=2.1).contains(&slope), "{slope}");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let args = [
        "witness",
        "--construction",
        "s1",
        "--v",
        "6",
        "--k",
        "2",
        "--h",
        "3",
    ];
    let stdout = run(&args).stdout;
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend_from_slice(&args);
    let out = run(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn witness_file_feeds_sens() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&[
            "--out",
            p,
            "witness",
            "--construction",
            "s1",
            "--v",
            "7",
            "--k",
            "2",
            "--h",
            "3"
        ]),
        Some(0)
    );
    let v = json(&[
        "sens",
        "--property",
        "isolated-triangle",
        "--v",
        "7",
        "--input",
        p,
    ]);
    assert_eq!(v["s_at_x"], 3 + 3 * 4);
}
