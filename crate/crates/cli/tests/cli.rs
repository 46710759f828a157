use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gradedgrowth"));
    c.env_remove("GRADEDGROWTH_BUDGET_MB");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compare with tests/golden/<name>; UPDATE_GOLDEN=1 rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn growth_of_klein_four() {
    let out = stdout(&["growth", "--group", "c2xc2", "--p", "2"]);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows, ["0\t1", "1\t2", "2\t1"]);
    assert!(out.starts_with("# config {"));
    golden("growth_c2xc2.tsv", &out);
}

#[test]
fn gs_without_relators() {
    let out = stdout(&["gs", "--d", "2", "--degrees", ""]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["is_GS"], Value::Bool(true));
    assert!(v["value_num"].as_i64().unwrap() < 0);
    golden("gs_d2.json", &out);
}

#[test]
fn gs_from_presentation_file() {
    let path = scratch("pres.json");
    std::fs::write(&path, r#"{"generators": ["x", "y"], "relators": ["xxx", "yyy"]}"#).unwrap();
    let out = stdout(&["gs", "--presentation", path.to_str().unwrap(), "--p", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([3, 3]));
    // 1 − 2t + 2t³ has its minimum near t = 0.58, where it is positive
    assert_eq!(v["is_GS"], Value::Bool(false));
}

#[test]
fn no_dead_ends_in_the_plane() {
    let out = stdout(&["deadends", "--group", "z2", "--radius", "6"]);
    assert_eq!(out.lines().count(), 2);
    golden("deadends_z2.tsv", &out);
}

#[test]
fn groups_listing() {
    let out = stdout(&["groups"]);
    for name in ["z2", "lamplighter", "c2xc2", "heis-mod3", "t33K"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{name}\t"))), "{name} missing");
    }
}

#[test]
fn registry_groups_are_usable() {
    let path = scratch("registry.json");
    std::fs::write(&path, r#"{"klein": {"kind": "free_abelian", "params": {"dim": 2, "modulus": 2}}}"#).unwrap();
    let listing = stdout(&["--registry", path.to_str().unwrap(), "groups"]);
    assert!(listing.lines().any(|l| l.starts_with("klein\tregistry")));
    let out = stdout(&["--registry", path.to_str().unwrap(), "growth", "--group", "klein", "--p", "2"]);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows, ["0\t1", "1\t2", "2\t1"]);
}

fn shape(v: &Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), shape(x))).collect()),
        Value::Array(a) => Value::Array(a.first().map(shape).into_iter().collect()),
        Value::String(_) => "string".into(),
        Value::Number(_) => "number".into(),
        Value::Bool(_) => "bool".into(),
        Value::Null => "null".into(),
    }
}

fn keys(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                out.push(k.clone());
                keys(x, out);
            }
        }
        Value::Array(a) => a.iter().for_each(|x| keys(x, out)),
        _ => {}
    }
}

#[test]
fn probe_report_schema() {
    let out = stdout(&[
        "tile-algebra-probe", "--group", "z", "--p", "2", "--basis", "(0)", "--basis", "(1)", "--epsilon", "1/2",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["experimental"], Value::Bool(true));
    let mut all = Vec::new();
    keys(&v, &mut all);
    assert!(
        !all.iter().any(|k| k.contains("theorem") || k.contains("proved") || k.contains("conclusion")),
        "report keys {all:?}"
    );
    let mut text = serde_json::to_string_pretty(&shape(&v)).unwrap();
    text.push('\n');
    golden("probe_schema.json", &text);
}

#[test]
fn tiling_certificates_round_trip() {
    let cert = scratch("z2.json");
    let args = ["tile", "--group", "z2", "--k", "ball:1", "--epsilon", "1/2"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args), "identical configs must give identical bytes");
    std::fs::write(&cert, &first).unwrap();
    let v: Value = serde_json::from_str(&stdout(&["verify", "--certificate", cert.to_str().unwrap()])).unwrap();
    assert_eq!((v["kind"].as_str(), v["valid"].as_bool()), (Some("tiling"), Some(true)));

    // drop one transversal element: the projection stops being onto
    let mut tampered: Value = serde_json::from_str(&first).unwrap();
    tampered["transversal"].as_array_mut().unwrap().pop();
    let bad = scratch("z2-bad.json");
    std::fs::write(&bad, serde_json::to_string(&tampered).unwrap()).unwrap();
    let out = run(&["verify", "--certificate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], Value::Bool(false));
}

#[test]
fn gs_certificates_round_trip() {
    let cert = scratch("gs.json");
    std::fs::write(&cert, stdout(&["gs", "--d", "2", "--degrees", "5..100"])).unwrap();
    let v: Value = serde_json::from_str(&stdout(&["verify", "--certificate", cert.to_str().unwrap()])).unwrap();
    assert_eq!(v["valid"], Value::Bool(true));

    let mut tampered: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    tampered["value_num"] = serde_json::json!(-1);
    std::fs::write(&cert, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_eq!(run(&["verify", "--certificate", cert.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn seeded_checks_are_deterministic() {
    let a = stdout(&["rs-check", "--group", "q8", "--p", "2", "--ideals", "5", "--seed", "7"]);
    assert_eq!(a, stdout(&["rs-check", "--group", "q8", "--p", "2", "--ideals", "5", "--seed", "7"]));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!((v["all_equal"].as_bool(), v["all_bounds_hold"].as_bool()), (Some(true), Some(true)));
    assert_eq!(v["config"]["seed"], serde_json::json!(7));
}

#[test]
fn crystal_operations() {
    // δ_a δ_A = λ² δ_e and δ_a δ_a = δ_{a²}
    let v: Value = serde_json::from_str(&stdout(&[
        "crystal", "mul", "--group", "z", "--ring", "5", "--lambda", "2", "--a", "a + 2*A", "--b", "a",
    ]))
    .unwrap();
    assert_eq!(v["product"], "3*(0) + 1*(2)");
    let v: Value =
        serde_json::from_str(&stdout(&["crystal", "check-monomial", "--group", "z2", "--check-radius", "2"])).unwrap();
    assert_eq!(v["monomial"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["growth", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["growth", "--group", "nosuchgroup", "--p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["tile", "--group", "z2", "--k", "(1,0)", "--epsilon", "1/2"]).status.code(), Some(4));
    assert_eq!(run(&["folner", "--group", "f2", "--k", "ball:1", "--bound", "1/2", "--max-radius", "4"]).status.code(), Some(5));
    let out = bin()
        .env("GRADEDGROWTH_BUDGET_MB", "1")
        .args(["folner", "--group", "z2", "--k", "ball:1", "--bound", "1/1000", "--max-radius", "300"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["gs", "--d", "1", "--degrees", "", "--format", "tsv"]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_report() {
    let path = scratch("growth.tsv");
    let out = run(&["growth", "--group", "c3", "--p", "3", "--output", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "2\t1"));
}
