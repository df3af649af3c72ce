use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(rel: &str) -> String {
    root().join("data").join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inertia")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn assert_valid(schema: &str, v: &Value) {
    let text = std::fs::read_to_string(root().join("schemas").join(format!("{schema}.schema.json"))).unwrap();
    let schema_json: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema_json).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
}

#[test]
fn q8_profile() {
    let out = run(&["inertial", "--group", &data("groups/q8.json"), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["t_G"], 4);
    assert_eq!(v["a_G"], 1);
    assert_valid("profile", &v);
}

#[test]
fn membership_query() {
    let q8 = data("groups/q8.json");
    let yes = json_of(&run(&["inertial", "--group", &q8, "--prime", "2", "--t", "4", "--a", "0"]));
    assert_eq!(yes["query"]["inertial"], "true");
    let no = json_of(&run(&["inertial", "--group", &q8, "--prime", "2", "--t", "3", "--a", "0"]));
    assert_eq!(no["query"]["inertial"], "false");
    assert_valid("profile", &no);
}

#[test]
fn weil_x_minus_4() {
    let out = run(&["weil", "--poly", "x-4", "--p", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["weil"], true);
    assert_valid("weil", &v);
    let list = json_of(&run(&["weil", "--poly", "[1,-1,5]", "--p", "5", "--n", "1"]));
    assert_eq!(list["weil"], true);
    assert_eq!(list["end_algebra"]["dim_A"], 1);
    let not = json_of(&run(&["weil", "--poly", "x^2-5x+5", "--p", "5", "--n", "1"]));
    assert_eq!(not["weil"], false);
    assert_valid("weil", &not);
}

#[test]
fn reducible_polynomial_is_a_precondition_error() {
    let out = run(&["weil", "--poly", "x^2-3x+2", "--p", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert!(v["error"]["message"].as_str().unwrap().contains("reducible"));
    assert_valid("error", &v);
}

#[test]
fn s4_is_not_a_ramification_group() {
    let out = run(&["analyze", "--group", &data("groups/s4.json"), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "precondition");
    assert!(v["error"]["message"].as_str().unwrap().contains("not a ramification group at 2"));
    assert_valid("error", &v);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["analyze", "--bogus"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn analyze_is_deterministic_and_valid() {
    for (file, p) in [("groups/d13.json", "13"), ("groups/z7_z9.json", "7"), ("groups/z3_z4.json", "3")] {
        let args = ["analyze", "--group", &data(file), "--prime", p, "--seed", "3"];
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{file}");
        assert_valid("analysis", &json_of(&first));
    }
}

#[test]
fn d13_report_notes_discrepancy() {
    let v = json_of(&run(&["analyze", "--group", &data("groups/d13.json"), "--prime", "13"]));
    assert_eq!(v["profile"]["t_G"], 12);
    assert_eq!(v["profile"]["a_G"], 12);
    assert!(v["profile"]["notes"][0].as_str().unwrap().contains("inconsistent"));
}

#[test]
fn table_output() {
    let out = run(&["analyze", "--group", &data("groups/z3_z4.json"), "--prime", "3", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("D(Q; inf#0:1/2, 3#0:1/2)"));
    assert!(text.contains("t_G = 4, a_G = 1"));
}

#[test]
fn realizations_of_q8() {
    let out = run(&["realizations", "--group", &data("groups/q8.json"), "--prime", "2", "--a", "1", "--faithful"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid("realizations", &v);
    assert_eq!(v["count"], 1);
    assert_eq!(v["realizations"][0]["multiplicities"][0]["type"], "III");
    let two =
        json_of(&run(&["realizations", "--group", &data("groups/q8.json"), "--prime", "2", "--a", "2", "--faithful"]));
    assert!(two["count"].as_u64().unwrap() >= 1);
    for r in two["realizations"].as_array().unwrap() {
        assert_eq!(r["faithful"], true);
        assert_eq!(r["total_a"], 2);
    }
}

#[test]
fn embeddings() {
    let decide = |file: &str, p: &str| json_of(&run(&["embed", "--algebra", &data(file), "--prime", p]));
    let a = decide("algebras/m3_h2.json", "2");
    assert_eq!(a["good_embedding"], "yes");
    assert_valid("embed", &a);
    assert_eq!(decide("algebras/q_zeta5.json", "3")["good_embedding"], "yes");
    let c = decide("algebras/quaternion_sqrt2.json", "7");
    assert_eq!(c["good_embedding"], "no");
    assert_eq!(c["obstruction"]["place"]["prime"], 7);
    assert_valid("embed", &c);
}

#[test]
fn shipped_inputs_validate() {
    for entry in std::fs::read_dir(root().join("data/groups")).unwrap() {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        assert_valid("group", &v);
    }
    for entry in std::fs::read_dir(root().join("data/algebras")).unwrap() {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        assert_valid("algebra_input", &v);
    }
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
}

#[test]
fn order_ceiling_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_inertia"))
        .args(["inertial", "--group", &data("groups/d13.json"), "--prime", "13"])
        .env("INERTIA_MAX_ORDER", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["error"]["message"].as_str().unwrap().contains("exceeds"));
}
