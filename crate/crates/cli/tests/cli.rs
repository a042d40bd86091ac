use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cpl-verify"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn copy_data(to: &Path) {
    for f in ["catalog.json", "witnesses.json", "relations.json", "iso_exceptions.json"] {
        std::fs::copy(data_dir().join(f), to.join(f)).unwrap();
    }
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| (i["name"].as_str().unwrap().to_string(), i["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn catalog_suite_passes() {
    let (r, code) = json(&["verify-catalog"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["summary"]["flagged"], 0);
    // 41 families, 10 automorphism groups, 6 isomorphism exceptions.
    assert_eq!(r["items"].as_array().unwrap().len(), 57);
    assert_eq!(r["data_hashes"].as_object().unwrap().len(), 4);
}

#[test]
fn only_filter_selects_one_family() {
    let (r, code) = json(&["verify-catalog", "--only", "C18"]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&r), vec![("C18".to_string(), "pass".to_string())]);
}

#[test]
fn variety_filter_restricts_catalog_items() {
    let (r, code) = json(&["verify-catalog", "--variety", "comm-assoc"]);
    assert_eq!(code, 0);
    let names: Vec<String> = statuses(&r).into_iter().map(|(n, _)| n).collect();
    assert!(names.contains(&"C38".to_string()));
    assert!(!names.contains(&"C40".to_string()));
    assert!(names.contains(&"isomorphism C39-swap".to_string()));
}

#[test]
fn geometry_suite_passes_with_flags() {
    let (r, code) = json(&["verify-geometry"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["fail"], 0);
    let flagged: Vec<String> =
        statuses(&r).into_iter().filter(|(_, s)| s == "flagged").map(|(n, _)| n).collect();
    assert_eq!(
        flagged,
        vec![
            "degeneration C09->C10",
            "degeneration C31->C21",
            "degeneration C38->C30",
            "non-degeneration C31 -/-> C33",
            "non-degeneration C31 -/-> C36",
            "non-degeneration C31 -/-> C37",
            "non-degeneration C40 -/-> C41",
            "dimension compatible-assoc C34",
            "dimension compatible-novikov C31",
        ]
    );
    let graphs = r["graphs"].as_array().unwrap();
    assert_eq!(graphs.len(), 4);
    let comm = graphs.iter().find(|g| g["variety"] == "compatible-comm-assoc").unwrap();
    assert!(comm["edges"].as_array().unwrap().iter().any(|e| e["source"] == "C38" && e["target"] == "C07"));
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let a = run(&["verify-geometry", "--format", "json", "--seed", "42"]);
    let b = run(&["verify-geometry", "--format", "json", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn seed_does_not_change_statuses() {
    let (a, _) = json(&["verify-geometry", "--seed", "1"]);
    let (b, _) = json(&["verify-geometry", "--seed", "987654321"]);
    assert_eq!(statuses(&a), statuses(&b));
    assert_ne!(a["dimensions"], b["dimensions"], "sampled points should differ");
}

#[test]
fn single_witness_filter() {
    let (r, code) = json(&["verify-geometry", "--only", "C38->C07"]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&r), vec![("degeneration C38->C07".to_string(), "pass".to_string())]);
    assert!(r.get("graphs").is_none());
}

#[test]
fn missing_data_file_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    copy_data(dir.path());
    std::fs::remove_file(dir.path().join("relations.json")).unwrap();
    let out = run(&["verify-catalog", "--data-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("data file missing"));
}

#[test]
fn corrupted_data_file_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    copy_data(dir.path());
    std::fs::write(dir.path().join("catalog.json"), "{\"bases\": 3}").unwrap();
    let out = run(&["verify-catalog", "--data-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn broken_witness_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    copy_data(dir.path());
    let path = dir.path().join("witnesses.json");
    let mut ws: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let w = ws.as_array_mut().unwrap().iter_mut().find(|w| w["name"] == "C24->C25").unwrap();
    // E2 = e2 / t becomes E2 = e2.
    w["basis"][1][1] = serde_json::json!({ "num": [["1", {}]] });
    std::fs::write(&path, serde_json::to_string(&ws).unwrap()).unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let (r, code) = json(&["verify-geometry", "--data-dir", dir_arg, "--only", "C24->C25"]);
    assert_eq!(code, 1);
    assert_eq!(r["items"][0]["status"], "fail");
    assert!(r["items"][0]["detail"].as_str().unwrap().contains("expected"));
    // The hash echoes the edited file.
    let (base, _) = json(&["verify-geometry", "--only", "C24->C25"]);
    assert_ne!(r["data_hashes"]["witnesses.json"], base["data_hashes"]["witnesses.json"]);
    assert_eq!(r["data_hashes"]["catalog.json"], base["data_hashes"]["catalog.json"]);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify-catalog", "--only", "C03", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["suite"], "verify-catalog");
}

#[test]
fn bad_configuration_exits_with_two() {
    assert_eq!(run(&["verify-catalog", "--variety", "lie"]).status.code(), Some(2));
    assert_eq!(run(&["verify-catalog", "--only", "C99"]).status.code(), Some(2));
    assert_eq!(run(&["verify-geometry", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn show_prints_tables() {
    let out = run(&["show", "C08"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("e2e1 = 1/2 e1 + e2"), "{text}");
    assert!(text.contains("derivations: 0"));

    let out = run(&["show", "C03"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("∗   e1e1 = e2\n"), "{text}");
    assert!(text.contains("derivations: 2"));

    let out = run(&["show", "C39", "alpha=1", "beta=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beta != alpha"));

    assert_eq!(run(&["show", "C42"]).status.code(), Some(2));
}

#[test]
fn show_json_at_a_point() {
    let (v, code) = json(&["show", "C38", "alpha=1", "beta=2", "gamma=3"]);
    assert_eq!(code, 0);
    assert_eq!(v["derivation_dimension"], 0);
    assert_eq!(v["params"]["gamma"], "3");
}
