//! End-to-end tests of the command-line surface: exit-code contract,
//! deterministic reports, and the documented flag set.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihomlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_n4_exits_zero() {
    let out = run(&["verify", &data("n4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let checks = doc["report"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_arity_two_file() {
    let out = run(&["verify", &data("osp12.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["overall"], "pass");
}

#[test]
fn verify_broken_algebra_exits_one_with_witness() {
    let out = run(&["verify", &data("n4_broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    let failing: Vec<_> = doc["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| !c["witness"]["residual"]
        .as_array()
        .unwrap()
        .is_empty()));
}

#[test]
fn malformed_file_exits_two() {
    let dir = std::env::temp_dir().join("bihomlie_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_parity.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("n4.json")).unwrap()).unwrap();
    doc["parity"] = serde_json::json!([0, 0, 0]);
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parity"));
}

#[test]
fn unknown_command_exits_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run(&["verify", &data("tstar_n4.json")]);
    let b = run(&["verify", &data("tstar_n4.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_do_not_depend_on_sweep_parallelism() {
    let run_with = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_bihomlie"))
            .env("BIHOMLIE_THREADS", threads)
            .args(["verify", &data("n4_broken.json")])
            .output()
            .expect("binary runs")
    };
    let single = run_with("1");
    let many = run_with("8");
    assert_eq!(single.status.code(), Some(1));
    assert_eq!(single.stdout, many.stdout, "witness depends on thread count");
}

#[test]
fn twist_osp12_emits_the_twisted_table() {
    let out = run(&[
        "twist",
        &data("osp12.json"),
        "--lambda",
        "2/1",
        "--mu",
        "3/1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let entries = doc["result"]["bracket"].as_array().unwrap();
    let hx = entries
        .iter()
        .find(|e| e["args"] == serde_json::json!([0, 1]))
        .expect("[H, X] entry present");
    assert_eq!(hx["out"]["X"], "18");
    let gf = entries
        .iter()
        .find(|e| e["args"] == serde_json::json!([4, 3]))
        .unwrap();
    assert_eq!(gf["out"]["H"], "2/3");
}

#[test]
fn twist_rejects_zero_parameter() {
    let out = run(&["twist", &data("osp12.json"), "--lambda", "0", "--mu", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn power_twist_of_arity_three_file() {
    let out = run(&["twist", &data("n4.json"), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sum_doubles_the_dimension() {
    let out = run(&["sum", &data("n4.json"), &data("l3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["dim"], 7);
}

#[test]
fn tensor_with_constant_factor() {
    let out = run(&["tensor", &data("const2.json"), &data("n4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["dim"], 8);
}

#[test]
fn semidirect_with_adjoint_module() {
    let out = run(&["semidirect", &data("n4_adjoint.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["dim"], 8);
}

#[test]
fn t_theta_central_extension() {
    let out = run(&["t-theta", &data("n4_central.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["dim"], 5);
}

#[test]
fn theta_f_emits_a_cocycle_block() {
    let out = run(&["theta-f", &data("n4_adjoint.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let theta = doc["result"]["theta"].as_array().unwrap();
    assert!(!theta.is_empty());
}

#[test]
fn sigma_reports_all_pass() {
    let out = run(&["sigma", &data("n4_adjoint.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["result"]["sigma"].is_array());
}

#[test]
fn dual_reports_agreeing_verdicts() {
    let out = run(&["dual", &data("n4_adjoint.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let notes = doc["report"]["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("verdicts agree: true")));
}

#[test]
fn tstar_builds_the_quadratic_double() {
    let out = run(&["tstar", &data("n4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["dim"], 8);
    assert!(doc["result"]["form"].is_array());
}

#[test]
fn series_of_l3() {
    let out = run(&["series", &data("l3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["solvable"], true);
    assert_eq!(doc["result"]["nilpotent"], false);
}

#[test]
fn derivations_of_n4() {
    let out = run(&["derivations", &data("n4.json"), "--r", "0", "--s", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let spaces = doc["result"]["spaces"].as_array().unwrap();
    assert_eq!(spaces[0]["dimension"], 12);
}

#[test]
fn center_of_n4() {
    let out = run(&["center", &data("n4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(
        doc["result"]["center"],
        serde_json::json!([["0", "0", "0", "1"]])
    );
}

#[test]
fn reconstruct_tstar_n4_gives_isometry_certificate() {
    let out = run(&["reconstruct", &data("tstar_n4.json"), "--ideal", "dual"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let checks = doc["report"]["checks"].as_array().unwrap();
    let isometry = checks
        .iter()
        .find(|c| c["name"] == "phi_isometry")
        .expect("isometry certificate present");
    assert_eq!(isometry["status"], "pass");
    // The recovered quotient is N4 again.
    assert_eq!(doc["result"]["quotient"]["dim"], 4);
}

#[test]
fn out_flag_writes_a_parseable_file() {
    let dir = std::env::temp_dir().join("bihomlie_cli_out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sum.json");
    let out = run(&[
        "sum",
        &data("n4.json"),
        &data("n4.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reread = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(reread.status.code(), Some(0));
}
