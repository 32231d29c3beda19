use std::path::Path;
use std::process::Command;

fn locdisc(args: &[&str], out_env: Option<&Path>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_locdisc"));
    cmd.args(args);
    match out_env {
        Some(p) => cmd.env("LOCDISC_OUT", p),
        None => cmd.env_remove("LOCDISC_OUT"),
    };
    let out = cmd.output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn passing_example_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, stdout) = locdisc(&["example", "--id", "4.1", "--epsilon", "0.1", "--r", "0.1", "--out", d], None);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("ex41/hdh"));
    assert!(dir.path().join("ex41.json").exists());
}

#[test]
fn failed_claim_exits_two() {
    // beyond r = epsilon the reverse closed form no longer applies
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout) = locdisc(&["example", "--id", "4.3", "--r", "0.2", "--out", dir.path().to_str().unwrap()], None);
    assert_eq!(code, 2, "{stdout}");
    assert!(stdout.contains("FAIL"));
}

#[test]
fn configuration_errors_exit_one() {
    assert_eq!(locdisc(&["example", "--id", "4.9"], None).0, 1);
    assert_eq!(locdisc(&["suite", "--name", "ex41"], None).0, 1);
    assert_eq!(locdisc(&["example", "--id", "4.1", "--epsilon", "0.8"], None).0, 1);
    assert_eq!(locdisc(&["sweep", "--config", "/nonexistent/cfg.json"], None).0, 1);
}

#[test]
fn flags_override_file_and_env_sets_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"trials": 2, "seed": 9, "sizes": [100, 200, 300]}"#).unwrap();
    let out = dir.path().join("env-out");
    let (code, _) = locdisc(&["sweep", "--config", cfg.to_str().unwrap(), "--trials", "3"], Some(&out));
    assert!(code == 0 || code == 2);
    let rec: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(rec["inputs"]["trials"], 3);
    assert_eq!(rec["inputs"]["seed"], 9);
    assert_eq!(rec["schema_version"], 1);
    assert!(out.join("sweep.csv").exists());
}
