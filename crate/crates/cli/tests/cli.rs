use std::process::{Command, Output};

fn mrfgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrfgraph")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn build_exports_dot() {
    let out = mrfgraph(&["build", "--kind", "comaximal", "--mode", "quotient", "--atoms", "2", "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph "));
    assert_eq!(text.matches(" -- ").count(), 1);
}

#[test]
fn build_json_for_single_atom_is_empty() {
    let out = mrfgraph(&["build", "--kind", "zero-divisor", "--atoms", "1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 0);
}

#[test]
fn metrics_reports_optimisation_values() {
    let out = mrfgraph(&["metrics", "--kind", "weakly-zd", "--atoms", "3", "--which", "clique,chromatic"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["vertices"], 12);
    let text = doc["optimisation"].to_string();
    assert!(text.contains("clique") && text.contains("chromatic"), "{text}");
}

#[test]
fn iso_verdicts() {
    let out = mrfgraph(&["iso", "--left", "zero-divisor", "--right", "comaximal", "--atoms", "3", "--alphabet", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"outcome\": \"isomorphic\""));
    let out = mrfgraph(&["iso", "--left", "zero-divisor", "--right", "comaximal", "--atoms", "3", "--alphabet", "3"]);
    let text = stdout(&out);
    assert!(text.contains("\"not-isomorphic\""), "{text}");
}

#[test]
fn verify_passes_and_writes_output() {
    let dir = std::env::temp_dir().join(format!("mrfgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out =
        mrfgraph(&["verify", "--suite", "comaximal,quotient", "--atoms", "2..3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["summary"]["fail"], 0);
    assert!(doc["summary"]["pass"].as_u64().unwrap() > 20);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("mrfgraph-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "atoms = \"2..3\"\nsuites = [\"weakly_zd\"]\nformat = \"text\"\n").unwrap();
    let out = mrfgraph(&["verify", "--config", path.to_str().unwrap(), "--atoms", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("weakly-zd/complete-multipartite"));
    assert!(!text.contains("n=2 "), "flag should narrow atoms to 3");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn sample_runs_interval_backend() {
    let out = mrfgraph(&["sample", "--samples", "20", "--suite", "measure_core,weakly_zd", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("interval/exact-splitting"));
    assert!(text.contains("lebesgue"));
}

#[test]
fn usage_errors_exit_2() {
    let out = mrfgraph(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = mrfgraph(&["build", "--kind", "comaximal", "--backend", "interval"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mrfgraph(&["verify", "--alphabet", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
