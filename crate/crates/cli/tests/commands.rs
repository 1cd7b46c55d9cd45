use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn trackhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trackhom"))
        .args(args)
        .env_remove("TRACKHOM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = trackhom(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), v, stdout)
}

fn groups(v: &Value, theory: &str) -> Vec<String> {
    v["cohomology"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["theory"] == theory)
        .unwrap_or_else(|| panic!("no {theory} table"))["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["group"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn les_on_loop2_is_exact() {
    let f = fixture("loop2.json");
    let (code, v, _) = json(&["les", f.to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["status"], "ok");
    assert_eq!(v["les"]["delta_choice_invariant"], true);
    assert_eq!(v["les"]["degrees"].as_array().unwrap().len(), 3);
    assert_eq!(v["resolution"], serde_json::json!([2, 8, 32, 128]));
}

#[test]
fn text_output_names_groups_and_time() {
    let f = fixture("loop2.json");
    let out = trackhom(&["cohomology", f.to_str().unwrap(), "--theory", "comonad"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H^1 = Z/2"), "{text}");
    assert!(text.contains("outcome: ok (exit 0) in "), "{text}");
}

#[test]
fn loop2_cohomology_tables() {
    let f = fixture("loop2.json");
    let (code, v, _) = json(&["cohomology", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(groups(&v, "comonad"), ["Z/2", "Z/2", "Z/2"]);
    assert_eq!(groups(&v, "so_total"), ["Z/2", "Z/2", "Z/2"]);
    assert_eq!(groups(&v, "so_base"), ["Z/2", "0", "0"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn gate_refusal_exits_4_with_a_witness() {
    let f = fixture("endo_cell.json");
    let (code, v, _) = json(&["gate", f.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert_eq!(v["gate"]["passed"], false);
    assert_eq!(v["gate"]["witness"], serde_json::json!(["g"]));
    assert_eq!(v["outcome"]["exit_code"], 4);
    // Every command that needs a resolution runs the gate first.
    assert_eq!(trackhom(&["cohomology", f.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn bw_vanishes_above_degree_one_on_a_free_base() {
    for name in ["arrow2.json", "dag_mixed.json", "loop2.json"] {
        let f = fixture(name);
        let (code, v, _) = json(&["bw", f.to_str().unwrap(), "--max-degree", "3"]);
        assert_eq!(code, 0);
        let g = groups(&v, "bw");
        assert_eq!(g.len(), 4);
        assert!(g[2..].iter().all(|s| s == "0"), "{name}: {g:?}");
    }
}

#[test]
fn json_is_deterministic() {
    let f = fixture("dag_mixed.json");
    let (_, _, a) = json(&["les", f.to_str().unwrap()]);
    let (_, _, b) = json(&["les", f.to_str().unwrap()]);
    assert_eq!(a, b);
    assert!(!a.contains(env!("CARGO_MANIFEST_DIR")), "absolute paths leak into the report");
}

#[test]
fn cache_warm_and_cold_print_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("arrow2.json");
    let cache = dir.path().to_str().unwrap();
    let run = || json(&["cohomology", f.to_str().unwrap(), "--cache-dir", cache]).2;
    let cold = run();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = run();
    assert_eq!(cold, warm);
    assert_eq!(cold, json(&["cohomology", f.to_str().unwrap()]).2);
}

#[test]
fn hash_follows_content() {
    let dir = tempfile::tempdir().unwrap();
    let original = std::fs::read_to_string(fixture("loop2.json")).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, &original).unwrap();
    std::fs::write(&b, original.replace("\"constant\": \"Z/2\"", "\"constant\": \"Z/3\"")).unwrap();
    let hash = |p: &PathBuf| json(&["validate", p.to_str().unwrap()]).1["fixture"]["sha256"].clone();
    let (ha, hb) = (hash(&a), hash(&b));
    assert_ne!(ha, hb);
    assert_eq!(ha, hash(&fixture("loop2.json")));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\n  \"schema\": \"trackhom.fixture/1\",\n  \"objects\": [\n").unwrap();
    let (code, v, _) = json(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["outcome"]["message"].as_str().unwrap().contains("broken.json:"));
    assert_eq!(trackhom(&["validate", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn validation_errors_exit_3() {
    let f = fixture("dangling.json");
    let (code, v, _) = json(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 3);
    let msg = v["validation"][0]["violations"][0].as_str().unwrap();
    assert!(msg.contains("two_cells[0]") && msg.contains("'w'"), "{msg}");
    // The nerve needs a constant module.
    let f = fixture("dag_mixed.json");
    assert_eq!(trackhom(&["nerve", f.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn empty_fixture_has_trivial_cohomology() {
    let f = fixture("empty.json");
    let (code, v, _) = json(&["cohomology", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    for t in ["comonad", "so_total", "so_base", "bw"] {
        assert!(groups(&v, t).iter().all(|g| g == "0"));
    }
}

#[test]
fn nerve_and_ses_commands() {
    let f = fixture("loop2.json");
    let (code, v, _) = json(&["nerve", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["nerve"]["coefficients"], "Z/2");
    assert_eq!(v["nerve"]["groups"][0]["group"], "Z/2");
    let f = fixture("dag_mixed.json");
    let (code, v, _) = json(&["ses", f.to_str().unwrap(), "--max-degree", "1"]);
    assert_eq!(code, 0);
    let ses = v["ses"].as_array().unwrap();
    assert_eq!(ses.len(), 3);
    assert!(ses.iter().all(|s| s["exact_middle"] == true && s["order_identity"] == true));
}
