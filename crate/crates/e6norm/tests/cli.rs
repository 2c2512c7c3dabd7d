//! End-to-end checks of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_e6norm"))
}

#[test]
fn classify_a_word() {
    let out = bin().args(["weyl", "classify", "3,1"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class"], 4);
    assert_eq!(v["order"], 3);
}

#[test]
fn torus_query_reports_structure() {
    let out = bin()
        .args(["torus", "--class", "14", "--q", "3", "--structure"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], "400");
    assert_eq!(v["invariant_factors"][0], "20");
    assert_eq!(v["invariant_factors"][1], "20");
}

#[test]
fn decide_split_class14_both_parities() {
    let yes = bin()
        .args(["decide-split", "--class", "14", "--q", "5"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&yes.stdout).unwrap();
    assert_eq!(v["splits"], true);
    let no = bin()
        .args(["decide-split", "--class", "14", "--q", "3", "--adjoint"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&no.stdout).unwrap();
    assert_eq!(v["splits"], false);
}

#[test]
fn tits_eval_reports_h_part() {
    let out = bin().args(["tits", "--word", "n1 n1"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weyl_word"].as_array().unwrap().len(), 0);
    assert_eq!(v["h_part"][0], 1);
    assert_eq!(v["order"], 2);
}

#[test]
fn run_suite_narrow_config_exits_zero_and_is_stable() {
    let dir = std::env::temp_dir().join(format!("e6norm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out1 = dir.join("report1.json");
    let out2 = dir.join("report2.json");
    for out in [&out1, &out2] {
        let st = bin()
            .args([
                "run-suite",
                "--q",
                "3",
                "--class",
                "7",
                "--class",
                "12",
                "--output",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert_eq!(st.code(), Some(0));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "reports must be byte-stable");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_inputs_are_rejected() {
    let st = bin()
        .args(["torus", "--class", "30", "--q", "3"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    let st = bin()
        .args(["torus", "--class", "3", "--q", "6"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
}
