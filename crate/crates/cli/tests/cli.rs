use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["orbit"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = orbitforge_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, _) = run(&a);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn construct_emits_verified_matrix() {
    let (code, v) = json(&["construct", "--rep", "sym2", "--poly", "x^3 - x"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["command"], "construct");
    assert_eq!(v["checks"]["charpoly_matches"], true);
    assert_eq!(v["checks"]["self_adjoint"], true);
    assert_eq!(v["result"]["matrix"].as_array().unwrap().len(), 3);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "command", "inputs", "result", "schema"]);
}

#[test]
fn skew_construct_and_twist() {
    let (code, v) = json(&["construct", "--rep", "adjoint", "--poly", "x^5 - 5x^3 + 4x"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"]["skew_adjoint"], true);
    let (code, v) = json(&["construct", "--rep", "sym2", "--poly", "x^3-x", "--values", "[1,-1,-1]"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["checks"]["charpoly_matches"], true);
}

#[test]
fn census_table() {
    let (code, out, _) = run(&["census", "--p", "3", "--n", "1", "--rep", "adjoint"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^3 + 2x"));
    let (code, v) = json(&["census", "--p", "5", "--n", "1", "--rep", "sym2", "--jobs", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["total_elements"], 15625);
    assert_eq!(v["checks"]["orbit_stabilizer"], true);
    let (_, single) = json(&["census", "--p", "5", "--n", "1", "--rep", "sym2"]);
    assert_eq!(v["result"], single["result"]);
}

#[test]
fn exit_codes() {
    let (code, v) = json(&["kernel", "--poly", "x^3", "--alpha", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NonSeparable");
    let (code, _, err) = run(&["kernel", "--poly", "x^^3"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 2"));
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["census", "--p", "3"]).0, 2);
    let (code, v) = json(&["local-count", "--poly", "x^3-x", "--p", "2", "--rep", "sym2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "BadPrime");
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("same-orbit"));
}

#[test]
fn counts_and_forms() {
    let (_, v) = json(&["local-count", "--poly", "x^3-x", "--p", "5", "--rep", "sym2"]);
    assert_eq!(v["result"]["count"], "10");
    let (_, v) = json(&["real-count", "--poly", "x^5-5x^3+4x", "--rep", "sym2"]);
    assert_eq!(v["result"]["count"], "10");
    let (_, v) = json(&["bqf", "classgroup", "--d", "-23"]);
    assert_eq!(v["result"]["h"], 3);
    let (_, v) = json(&["bqf", "reduce", "--form", "3,1,2"]);
    assert_eq!(v["result"]["reduced"], serde_json::json!(["2", "-1", "3"]));
    let (_, v) = json(&["bqf", "census", "--d", "-23", "--bound", "30"]);
    assert_eq!(v["result"]["orbits"], 3);
    assert_eq!(v["checks"]["matches_class_number"], true);
}

#[test]
fn descent_pencil_and_orbits() {
    let (code, v) = json(&["descend", "--poly", "x^3-2", "--x", "3", "--y", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"]["in_kernel"], true);
    assert_eq!(v["result"]["norm"], "25");
    let (_, v) = json(&["pencil-check", "--poly", "x^3-2", "--alpha", "3 - b"]);
    assert_eq!(v["checks"]["proportional"], true);
    let (_, v) = json(&["same-orbit", "--rep", "sym2", "--poly", "x^3-x", "--alpha1", "1", "--alpha2", "4"]);
    assert_eq!(v["result"]["verdict"], "equal");
    let (_, v) = json(&["classify", "--rep", "standard", "--vector", "[2,1,2]"]);
    assert_eq!(v["result"]["q2"], "9");
}

#[test]
fn lattice_commands() {
    let (_, v) = json(&["lattice-verify", "--poly", "x^3-2", "--rep", "sym2"]);
    assert_eq!(v["result"]["verdict"], "valid");
    let (_, v) = json(&["lattice-verify", "--poly", "x^3-2", "--rep", "sym2", "--alpha", "b"]);
    assert_eq!(v["result"]["verdict"], "invalid");
    let (_, v) = json(&["lattice-verify", "--vector", "[2,1,2]"]);
    assert_eq!(v["result"]["even"], true);
    let (_, v) = json(&["stab-info", "--rep", "standard", "--n", "2", "--d", "12"]);
    assert_eq!(v["result"]["disc_class"], "3");
}

#[test]
fn binary_output_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_orbit");
    let args = ["construct", "--rep", "adjoint", "--poly", "x^3+x", "--json"];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).env("ORBITFORGE_SEED", "12345").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
