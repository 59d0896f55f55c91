//! End-to-end tests of the `qcp` binary: exit codes, report schema,
//! and output shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../qcp-core/tests/corpus")
        .join(name)
}

fn qcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "invalid JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

#[test]
fn run_superdense_point_mass() {
    let file = corpus("superdense.qcp");
    let out = qcp(&["run", file.to_str().unwrap(), "--input", "10"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["command"], "run");
    assert_eq!(v["protocolName"], "superdense");
    assert_eq!(v["n"], 2);
    assert_eq!(v["E"], 1);
    assert_eq!(v["m_A"], 1);
    let dist = v["distribution"].as_array().unwrap();
    assert_eq!(dist.len(), 4);
    for entry in dist {
        let p = entry["probability"].as_f64().unwrap();
        if entry["output"] == "10" {
            assert!((p - 1.0).abs() < 1e-9);
        } else {
            assert!(p.abs() < 1e-9);
        }
    }
}

#[test]
fn run_empty_protocol_reports_success_one() {
    let out = qcp(&["run", corpus("empty.qcp").to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["successExact"], 1.0);
    assert_eq!(v["margin"], 0.0);
}

#[test]
fn malformed_file_exits_two_with_position() {
    let dir = std::env::temp_dir().join("qcp-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.qcp");
    std::fs::write(&path, "protocol p {\n  n 0;\n  eppr 0;\n  outputs [];\n}\n").unwrap();
    let out = qcp(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("3:3"), "stderr: {stderr}");
}

#[test]
fn missing_file_exits_two() {
    let out = qcp(&["run", "/nonexistent/nowhere.qcp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wrong_input_length_exits_two() {
    let file = corpus("superdense.qcp");
    let out = qcp(&["run", file.to_str().unwrap(), "--input", "101"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_flag_exits_three() {
    let file = corpus("superdense.qcp");
    let out = qcp(&["run", file.to_str().unwrap(), "--cap-qubits", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cap_env_exits_three_and_flag_overrides() {
    let file = corpus("superdense.qcp");
    let out = Command::new(env!("CARGO_BIN_EXE_qcp"))
        .args(["run", file.to_str().unwrap()])
        .env("QCP_CAP_QUBITS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_qcp"))
        .args(["run", file.to_str().unwrap(), "--cap-qubits", "12"])
        .env("QCP_CAP_QUBITS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn certify_superdense_exits_zero() {
    let out = qcp(&["certify", corpus("superdense.qcp").to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!(v["traceIdentityResidual"].as_f64().unwrap() <= 1e-9);
    assert!(v["reconstructionResidual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["messages"].as_array().unwrap().len(), 4);
}

#[test]
fn certify_regression_threeround_exits_zero() {
    let out = qcp(&["certify", corpus("threeround.qcp").to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn bound_superdense_margin_zero() {
    let out = qcp(&["bound", corpus("superdense.qcp").to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!((v["successExact"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(v["margin"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn bound_rejects_protocol_without_message() {
    let out = qcp(&["bound", corpus("empty.qcp").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demo_rejects_unknown_name_and_bad_flags() {
    assert_eq!(qcp(&["demo", "nope"]).status.code(), Some(2));
    assert_eq!(
        qcp(&["demo", "superdense", "--m", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcp(&["demo", "ip-classical", "--n", "4", "--t", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qcp(&["demo", "ip-reduction", "--n", "2", "--eps", "0.7"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn demo_superdense_csv_shape() {
    let out = qcp(&["demo", "superdense", "--m", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,n,qubitsSent,successExact,boundRhs,margin,tight"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("2,4,2,"), "row: {row}");
    assert!(lines.next().is_none());
}

#[test]
fn reports_are_stable_modulo_timestamp() {
    let file = corpus("superdense.qcp");
    let args = ["run", file.to_str().unwrap(), "--input", "01"];
    let strip = |out: &Output| -> String {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.contains("timestamp"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(&qcp(&args));
    let b = strip(&qcp(&args));
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("qcp-cli-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let file = corpus("superdense.qcp");
    let out = qcp(&[
        "bound",
        file.to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["command"], "bound");
}

#[test]
fn threads_flag_does_not_change_results() {
    let file = corpus("superdense2.qcp");
    let strip = |out: &Output| -> String {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.contains("timestamp"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let base = strip(&qcp(&["bound", file.to_str().unwrap()]));
    let single = strip(&qcp(&["bound", file.to_str().unwrap(), "--threads", "1"]));
    let many = strip(&qcp(&["bound", file.to_str().unwrap(), "--threads", "4"]));
    assert_eq!(base, single);
    assert_eq!(base, many);
}
