use std::process::{Command, Output};

use tempfile::TempDir;

fn jgrid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jgrid")).args(args).output().expect("jgrid runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn gen(dir: &TempDir, family: &str, n: &str, seed: &str, name: &str) -> String {
    let p = path(dir, name);
    let o = jgrid(&["gen", "--family", family, "--n", n, "--seed", seed, "--out", &p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn crossing_instance_has_witness() {
    let dir = TempDir::new().unwrap();
    let c = gen(&dir, "crossing", "10", "7", "c.json");
    assert_eq!(jgrid(&["validate", "--instance", &c]).status.code(), Some(0));
    let o = jgrid(&["parity", "--instance", &c, "--witness"]);
    assert!(o.status.success());
    let w: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(w["blue_degree"].as_u64().unwrap() > 0);
    assert!(w["red_degree"].as_u64().unwrap() > 0);
}

#[test]
fn curve_commands() {
    let dir = TempDir::new().unwrap();
    let k = gen(&dir, "curve", "9", "2", "k.json");
    assert!(jgrid(&["alternation", "--instance", &k]).status.success());
    let o = jgrid(&["--json", "regions", "--instance", &k]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"regions":2}"#);
    let svg = path(&dir, "conn.svg");
    let o = jgrid(&["--json", "connect", "--instance", &k, "--point", "0,0", "--svg", &svg]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["path"].is_array());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn reductions_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let c = gen(&dir, "crossing", "6", "1", "c.json");
    let s = path(&dir, "s.json");
    assert!(jgrid(&["reduce", "--from", "jct", "--form", "set", "--instance", &c, "--out", &s]).status.success());
    let o = jgrid(&["--json", "validate", "--instance", &s]);
    assert!(stdout(&o).contains("stconn"));
    let back = path(&dir, "j.json");
    assert!(jgrid(&["reduce", "--from", "stconn", "--form", "set", "--instance", &s, "--out", &back])
        .status
        .success());
    assert!(jgrid(&["parity", "--instance", &back, "--witness"]).status.success());
    let o = jgrid(&["reduce", "--from", "jct", "--form", "seq", "--instance", &c, "--edge-at", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn tautology_checks() {
    let o = jgrid(&["gen", "--family", "stconn", "--n", "2", "--check", "exhaustive"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("UNSAT"));
    let o = jgrid(&["gen", "--family", "stseq", "--n", "2", "--check", "dpll", "--weaken", "no-intersection"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(": SAT"));
    let o = jgrid(&["gen", "--family", "stconn", "--n", "1"]);
    assert!(stdout(&o).starts_with("c "));
    assert!(stdout(&o).contains("p cnf 8 16"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(jgrid(&["validate", "--instance", &bad]).status.code(), Some(1));
    assert_eq!(jgrid(&["validate", "--instance", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(jgrid(&["nonsense"]).status.code(), Some(1));
    assert_eq!(jgrid(&["--help"]).status.code(), Some(0));
    // an open blue path is not a curve
    let open = path(&dir, "open.json");
    std::fs::write(&open, r#"{"n":3,"form":"seq","blue":{"kind":"open","points":[[0,0],[1,0]]}}"#).unwrap();
    assert_eq!(jgrid(&["regions", "--instance", &open]).status.code(), Some(1));
}

#[test]
fn merge_rejects_intersecting_paths() {
    let dir = TempDir::new().unwrap();
    let c = gen(&dir, "crossing", "8", "4", "c.json");
    let o = jgrid(&["merge", "--blue", &c, "--red", &c]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_and_fuzz() {
    let dir = TempDir::new().unwrap();
    let c = gen(&dir, "crossing", "6", "9", "c.json");
    let svg = path(&dir, "c.svg");
    assert!(jgrid(&["render", "--instance", &c, "--witness", "--out", &svg]).status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"id="witnesses""#));
    let o = jgrid(&["fuzz", "--seed", "100", "--count", "10", "--n", "10"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
