use inertia_wasm::{decomposition_json, inertial_grid_json, weil_report_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn q8_grid() {
    let v = parse(inertial_grid_json(r#"{"kind": "gen_quaternion", "order": 8}"#, 2, 5, 2).unwrap());
    let grid = v["grid"].as_array().unwrap();
    assert_eq!(grid.len(), 3);
    assert_eq!(grid[0][3], "false");
    assert_eq!(grid[0][4], "true");
    assert_eq!(grid[1][0], "true");
    assert_eq!(v["profile"]["t_G"], 4);
}

#[test]
fn grid_size_is_bounded() {
    assert!(inertial_grid_json(r#"{"kind": "cyclic", "n": 3}"#, 3, 1000, 1).is_err());
}

#[test]
fn weil_and_tate() {
    let v = parse(weil_report_json("x-3", 3, 2).unwrap());
    assert_eq!(v["weil"], true);
    assert_eq!(v["end_algebra"]["index"], 2);
    let bad = parse(weil_report_json("x^2-5x+5", 5, 1).unwrap());
    assert_eq!(bad["weil"], false);
    assert!(bad["end_algebra"].is_null());
    assert!(weil_report_json("x^2-3x+2", 2, 1).unwrap_err().contains("reducible"));
}

#[test]
fn d13_decomposition() {
    let v = parse(decomposition_json(r#"{"kind": "dihedral", "n": 13}"#, 13).unwrap());
    let names: Vec<&str> =
        v["factors"].as_array().unwrap().iter().map(|f| f["description"].as_str().unwrap()).collect();
    assert_eq!(names, ["Q", "Q", "M_2(Q(zeta_13)^+)"]);
    assert!(v["text"].as_str().unwrap().contains("t_G = 12"));
}

#[test]
fn errors_are_messages() {
    assert!(decomposition_json("{", 2).unwrap_err().contains("bad group"));
    let s4 = r#"{"kind": "perm", "generators": [[1, 2, 3, 0], [1, 0, 2, 3]]}"#;
    assert!(decomposition_json(s4, 2).unwrap_err().contains("not a ramification group"));
}
