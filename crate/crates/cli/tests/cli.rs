use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn normctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normctl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn invert_oracle_example() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"group":[2],"lambda":[1,0],"f":[[-0.5,0],[-0.5,0]]}"#);
    let out_path = dir.path().join("inv.json");
    let out = normctl(&[
        "invert", "-i", &x, "--kind", "ap", "--p", "1", "--theorem", "oracle", "-o",
        out_path.to_str().unwrap(), "--check",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out_path);
    assert_eq!(v["theorem"], "oracle");
    assert_eq!(v["inverse"]["lambda"], serde_json::json!([1.0, 0.0]));
    assert_eq!(v["inverse"]["f"], serde_json::json!([[1.0, 0.0], [1.0, 0.0]]));

    let verify = normctl(&["invert", "-i", &x, "--p", "1", "--check", "--inverse", out_path.to_str().unwrap()]);
    assert!(verify.status.success());
    let wrong = write(&dir, "wrong.json", r#"{"group":[2],"lambda":[1,0],"f":[[0,0],[0,0]]}"#);
    let verify = normctl(&["invert", "-i", &x, "--p", "1", "--check", "--inverse", &wrong]);
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn invert_auto_labels_pipeline() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"group":[4],"lambda":[0,0.8],"f":[[0.02,0],[0,0.01],[-0.01,0],[0,0]]}"#);
    let out = normctl(&["invert", "-i", &x, "--p", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["theorem"], "splitting");
    let out = normctl(&["invert", "-i", &x, "--p", "3", "--theorem", "lp2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"]["family"], "lp");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"group":[2],"lambda":[0.5,0],"f":[[0,0],[0,0]]}"#);
    let out = normctl(&["invert", "-i", &x, "--p", "3", "--theorem", "thm6", "--delta", "0.3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires delta > 1/3"));

    let singular = write(&dir, "s.json", r#"{"group":[2],"lambda":[0.5,0],"f":[[-0.5,0],[-0.5,0]]}"#);
    assert_eq!(normctl(&["invert", "-i", &singular, "--p", "1"]).status.code(), Some(3));

    let garbage = write(&dir, "g.json", "{not json");
    assert_eq!(normctl(&["invert", "-i", &garbage, "--p", "1"]).status.code(), Some(2));
    assert_eq!(normctl(&["invert", "-i", &x, "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(normctl(&["certify", "--p", "2", "--delta", "x", "--group", "8"]).status.code(), Some(2));
}

#[test]
fn certify_thm5_row() {
    let out = normctl(&[
        "certify", "--theorem", "thm5", "--p", "2", "--delta", "0.5", "--group", "8", "--trials", "1000",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], concat!("# normctl ", env!("CARGO_PKG_VERSION")));
    assert_eq!(lines[1], "kind,p,delta,group,theorem,trials,violations,certified_bound,max_actual,min_slack,status");
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..8], &["ap", "2", "0.5", "8", "thm5", "1000", "0", "6"]);
    assert_eq!(cells[10], "ok");
}

#[test]
fn certify_is_byte_stable_across_threads() {
    let args = ["certify", "--kind", "lp", "--p", "1.50", "--delta", "0.25", "--group", "[3,4]", "--trials", "200", "--seed", "9"];
    let a = normctl(&args);
    let mut serial = args.to_vec();
    serial.push("--serial");
    let b = normctl(&serial);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("lp,1.50,0.25,3x4,auto,200,0,"));
}

#[test]
fn sweep_marks_skipped_rows() {
    let out = normctl(&[
        "sweep", "--kinds", "ap", "--ps", "3", "--deltas", "0.3,0.5", "--groups", "8", "--theorems", "thm6", "--trials", "20",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ap,3,0.3,8,thm6,0,0,,,,skipped"));
    assert!(text.lines().any(|l| l.starts_with("ap,3,0.5,8,thm6,20,0,") && l.ends_with(",ok")));
}

#[test]
fn search_writes_verifiable_estimate() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("est.json");
    let out = normctl(&[
        "search", "--p", "2", "--delta", "0.5", "--group", "8", "--iterations", "200", "--seed", "3", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let est = normctl::harness::ExtremalEstimate::from_json(&text).unwrap();
    assert!(est.lower_bound <= 6.0);
    assert_eq!(est.witness.group().orders(), &[8]);
}

#[test]
fn bezout_scalar_pair() {
    let dir = TempDir::new().unwrap();
    let xs = write(
        &dir,
        "xs.json",
        r#"[{"group":[3],"lambda":[0.7,0],"f":[[0,0],[0,0],[0,0]]},
            {"group":[3],"lambda":[0.7,0],"f":[[0,0],[0,0],[0,0]]}]"#,
    );
    let out = normctl(&["bezout", "-i", &xs, "--kind", "lp", "--p", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    let y0 = v["ys"][0]["lambda"][0].as_f64().unwrap();
    assert!((y0 - 0.5 / 0.7).abs() < 1e-12);
}
