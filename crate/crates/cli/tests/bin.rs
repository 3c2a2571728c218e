//! End-to-end tests of the `meansq` binary surface.

use std::process::Command;

fn meansq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_meansq"))
}

#[test]
fn unknown_suite_fails_with_usage_hint() {
    let out = meansq().args(["verify", "nonsense"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("gauss | poisson | oracle | euler | all"),
        "stderr: {err}"
    );
}

#[test]
fn verify_euler_passes_and_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = meansq()
        .args(["verify", "euler", "--json"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed[0]["suite"], "euler");
    assert_eq!(parsed[0]["pass"], true);
}

#[test]
fn constants_doubling_phi_quadruples_both() {
    let dir = tempfile::tempdir().unwrap();
    let write_cfg = |name: &str, amp: f64| {
        let path = dir.path().join(name);
        std::fs::write(
            &path,
            format!(
                r#"{{"phi": {{"kind": "standard_bump", "amplitude": {amp}}},
                     "prime_cutoff": 10000, "a_max": 1000}}"#
            ),
        )
        .unwrap();
        path
    };
    let run = |cfg: &std::path::Path, out: &str| -> serde_json::Value {
        let out_path = dir.path().join(out);
        let st = meansq()
            .args(["constants", "--config"])
            .arg(cfg)
            .arg("--out")
            .arg(&out_path)
            .output()
            .unwrap();
        assert!(
            st.status.success(),
            "{}",
            String::from_utf8_lossy(&st.stderr)
        );
        serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap()
    };
    let base = run(&write_cfg("one.json", 1.0), "one.out.json");
    let scaled = run(&write_cfg("two.json", 2.0), "two.out.json");
    let (c1, c2) = (base["C1"].as_f64().unwrap(), base["C2"].as_f64().unwrap());
    let (c1s, c2s) = (
        scaled["C1"].as_f64().unwrap(),
        scaled["C2"].as_f64().unwrap(),
    );
    assert!(c1 > 0.0 && c2 < 0.0);
    assert!((c1s - 4.0 * c1).abs() < 1e-10 * c1.abs());
    assert!((c2s - 4.0 * c2).abs() < 1e-10 * c2.abs());
}

#[test]
fn constants_rejects_malformed_window() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"phi": {"amplitude": 2.0}}"#).unwrap();
    let out = meansq()
        .args(["constants", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn scan_rejects_region_violation_before_compute() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"theta": 0.4, "x_values": [1024]}"#).unwrap();
    let out = meansq()
        .args(["scan", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("theta"), "stderr: {err}");
}

#[test]
fn poisson_and_gauss_commands() {
    let out = meansq()
        .args(["poisson", "--n", "15", "--x", "80"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("abs_error"));

    let out = meansq()
        .args(["gauss", "--m", "0", "--k", "9"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("6 * sqrt(1)"), "stdout: {text}");

    // even n refused
    let out = meansq()
        .args(["poisson", "--n", "6", "--x", "80"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
