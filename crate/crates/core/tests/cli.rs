use std::path::PathBuf;
use std::process::{Command, Output};

fn silt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silt")).args(args).output().expect("silt runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_follow_the_outcome() {
    let holds = silt(&["check", "tau-rigid", "-n", "2", "fixture:eximp", "fixture:eximp/M"]);
    assert_eq!(code(&holds), 0);
    let fails = silt(&["check", "tau-rigid", "-n", "1", "fixture:eximp", "fixture:eximp/M"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("hom(P(2), S(2)) = 1"), "{}", stdout(&fails));
    let tilting = silt(&[
        "--field",
        "Q",
        "check",
        "tau-tilting",
        "-n",
        "2",
        "-m",
        "2",
        "fixture:eximp",
        "fixture:eximp/M",
    ]);
    assert_eq!(code(&tilting), 0);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&silt(&["verify", "nonsense"])), 3);
    assert_eq!(code(&silt(&["check", "sideways", "fixture:eximp", "fixture:eximp/M"])), 3);
    assert_eq!(code(&silt(&["check", "tau-rigid", "fixture:eximp", "fixture:ejp1/M"])), 3);
    assert_eq!(code(&silt(&["check", "tau-rigid", "fixture:eximp", "/does/not/exist.json"])), 3);
    assert_eq!(
        code(&silt(&[
            "--field",
            "Fp:4",
            "check",
            "tau-rigid",
            "fixture:eximp",
            "fixture:eximp/M"
        ])),
        3
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_silt"))
        .env("SILT_WORK_BOUND", "lots")
        .args(["verify", "teo"])
        .output()
        .unwrap();
    assert_eq!(code(&bad), 3);
}

#[test]
fn files_round_trip_through_tau() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let tau = silt(&["--json", "tau", "-n", "1", "fixture:eximp", "fixture:eximp/S(1)"]);
    assert_eq!(code(&tau), 0);
    let path = dir.join("tau_s1.json");
    std::fs::write(&path, tau.stdout).unwrap();
    let check = silt(&["check", "tau-rigid", "fixture:eximp", path.to_str().unwrap()]);
    assert_eq!(code(&check), 0);
}

#[test]
fn resolution_of_s1_is_periodic() {
    let out = silt(&["--json", "resolve", "--depth", "5", "fixture:eximp", "fixture:eximp/S(1)"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["pd"].is_null());
    assert_eq!(v["periodic"], serde_json::json!([0, 3]));
}

#[test]
fn reports_are_byte_stable() {
    let a = silt(&["--json", "verify", "teo", "--threads", "1"]);
    let b = silt(&["--json", "verify", "teo", "--threads", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for r in v["records"].as_array().unwrap() {
        assert!(r["runtime-ms"].is_null());
        assert_eq!(r["certificate-digest"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn enumeration_at_bound_two() {
    let out = silt(&["--json", "enum", "fixture:eximp", "--max-dim", "2", "-n", "1,2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 6);
}
