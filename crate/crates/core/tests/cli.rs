use std::process::{Command, Output};

fn hartogs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hartogs"))
        .args(args)
        .env_remove("HARTOGS_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn kernel_two_one_has_five_terms() {
    let o = hartogs(&["kernel", "--m", "2", "--n", "1", "--verify", "--output-format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["numerator"]["var"], "s,t");
    let terms = v["numerator"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 5);
    assert_eq!(terms[0], serde_json::json!([0, 1, "1"]));
    assert_eq!(v["denominator"], "2*pi^2*(1-t)^2*(t^1-s^2)^2");
}

#[test]
fn invalid_pairs_exit_two() {
    let o = hartogs(&["kernel", "--m", "4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m,n must be coprime"));
    assert_eq!(stderr(&o).lines().count(), 1);

    let o = hartogs(&["kernel", "--m", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("require m > n"));
}

#[test]
fn qpoly_json() {
    let o = hartogs(&["qpoly", "--m", "3", "--n", "1", "--output-format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"m": 3, "n": 1, "k": 2, "coeffs": ["1", "6", "13", "6", "1"]}));
}

#[test]
fn roots_text_and_json() {
    let o = hartogs(&["roots", "--m", "2", "--n", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("inside=1 on=0 outside=1"));

    let o = hartogs(&["roots", "--m", "7", "--n", "3", "--output-format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["inside"].as_u64(), v["on_circle"].as_u64()), (Some(4), Some(0)));
    assert_eq!(v["method"], "palindromic_pairing");
    assert_eq!(v["float_roots"].as_array().unwrap().len(), 8);
}

#[test]
fn scan_csv_is_stable_across_workers() {
    let a = hartogs(&["scan", "--m-max", "40", "--no-timing", "--workers", "1"]);
    let b = Command::new(env!("CARGO_BIN_EXE_hartogs"))
        .args(["scan", "--m-max", "40", "--no-timing", "--workers", "1"])
        .env("HARTOGS_WORKERS", "6")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("m,n,k,degree,circle_count,interior_count,conjecture_holds,elapsed_ms")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 489);
    assert!(rows.iter().all(|r| r.split(',').nth(6) == Some("true")));
}

#[test]
fn scan_k_filter_json() {
    let o = hartogs(&["scan", "--m-max", "12", "--k", "2", "--output-format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["interior_count"] == 2 && r["k"] == 2));
}

#[test]
fn bad_worker_env_is_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_hartogs"))
        .args(["scan", "--m-max", "5"])
        .env("HARTOGS_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_csv() {
    let o = hartogs(&["witness", "--m", "3", "--n", "1", "--output-format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    for row in text.lines().skip(1) {
        let residual: f64 = row.split(',').nth(12).unwrap().parse().unwrap();
        assert!(residual < 1e-8);
    }
}

#[test]
fn eval_agrees_with_series() {
    let o = hartogs(&[
        "eval", "--m", "3", "--n", "2", "--z", "0.2", "-0.1", "0.5", "0.2", "--w", "-0.3", "0.05", "0.6",
        "-0.1", "--output-format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["relative_difference"].as_f64().unwrap() < 1e-8);
}

#[test]
fn eval_outside_domain_exits_two() {
    let o = hartogs(&["eval", "--m", "2", "--n", "1", "--z", "0.9", "0", "0.5", "0", "--w", "0.1", "0", "0.5", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_written_whole_or_not_at_all() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let p = path.to_str().unwrap();
    let o = hartogs(&["qpoly", "--m", "5", "--n", "2", "--output-format", "json", "--output", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["k"], 3);

    let bad = dir.path().join("bad.json");
    let o = hartogs(&["qpoly", "--m", "6", "--n", "2", "--output", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!bad.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
