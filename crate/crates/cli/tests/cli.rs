use std::io::Write;
use std::process::{Command, Output};

fn coprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coprime"))
        .args(args)
        .env_remove("COPRIME_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn info_reports_order_and_radical() {
    let out = coprime(&["info", "Cyclic(6)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order:          6"), "{text}");
    assert!(text.contains("rad(|G|):       6"));

    let out = coprime(&["info", "Dihedral(12)", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["order"], 12);
    assert_eq!(json["element_orders"]["6"], 2);

    let out = coprime(&["info", "Presented(\"< a | a^5=e >\")"]);
    assert!(stdout(&out).contains("order:          5"));
}

#[test]
fn info_accepts_catalog_labels_and_files() {
    let out = coprime(&["info", "Dic12", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["end_vertices"], 2);

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "Symmetric(3) x Cyclic(7)").unwrap();
    let out = coprime(&[
        "info",
        "--file",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["order"], 42);
    assert_eq!(json["end_vertices"], 0);
}

#[test]
fn exit_codes() {
    let out = coprime(&["info", "Cyclic(6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error"));
    assert!(out.stdout.is_empty());
    assert_eq!(coprime(&["info", "Dihedral(5)"]).status.code(), Some(3));
    assert_eq!(
        coprime(&["graph", "Presented(\"< a, b | a b >\")"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        coprime(&["info", "--file", "/nonexistent/spec"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coprime(&["classify", "3", "--catalog", "/nonexistent/catalog"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn graph_dot_marks_end_vertices() {
    let out = coprime(&["graph", "Cyclic(4)"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert_eq!(dot.matches("doublecircle").count(), 3);
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert!(stderr(&out).contains("3 end vertices"));
}

#[test]
fn graph_json_is_byte_stable() {
    let a = coprime(&["graph", "Cyclic(6)", "--format", "json"]);
    let b = coprime(&["graph", "Cyclic(6)", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stderr(&a).contains("2 end vertices"));
    let trivial = coprime(&["graph", "Cyclic(1)", "--format", "json"]);
    assert_eq!(trivial.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&trivial.stdout).unwrap();
    assert_eq!(json["edges"], serde_json::json!([]));
}

#[test]
fn graph_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z6.dot");
    let out = coprime(&["graph", "Cyclic(6)", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("graph"));
}

#[test]
fn analyze_runs_every_check() {
    let out = coprime(&["analyze", "Dicyclic(12)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("sharp=true"), "{text}");
    assert_eq!(
        text.matches(" holds ").count() + text.matches("not-applicable").count(),
        9
    );

    let out = coprime(&["analyze", "Symmetric(3)", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["end_vertices"], 0);
    assert_eq!(json["all_hold"], true);

    let text = stdout(&coprime(&["analyze", "Cyclic(8)"]));
    assert!(text.contains("two_group=true"));
    assert!(text.contains("|E_G| = 7"));
}

#[test]
fn classify_reports() {
    let out = coprime(&["classify", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let labels: Vec<&str> = json["matches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, vec!["Z4", "Z2xZ2"]);

    let out = coprime(&["classify", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("odd, 6 not a power of 2"));
}

#[test]
fn classify_json_is_deterministic_across_job_counts() {
    let a = coprime(&["classify", "6", "--format", "json", "--jobs", "1"]);
    let b = coprime(&["classify", "6", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_tables_passes_on_bundled_catalog() {
    let out = coprime(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("all tables verified"));
    let json = coprime(&["verify-paper", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["reports"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_tables_fails_on_a_reduced_catalog() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        "@complete 12\nZ12 | Cyclic(12) | order=12\nD12 | Dihedral(12) | order=12\n"
    )
    .unwrap();
    let out = coprime(&["verify-paper", "--catalog", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("missing"));
}

#[test]
fn catalog_from_environment() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "Z6 | Cyclic(6) | order=6").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_coprime"))
        .args(["catalog", "--realize"])
        .env("COPRIME_CATALOG", file.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("|E_G|=2"), "{text}");
    assert!(text.contains("1 entries"));
}

#[test]
fn catalog_errors() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "Z6 | Cyclic(6)").unwrap();
    let out = coprime(&["catalog", "--catalog", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "bad | Dihedral(12) | order=10").unwrap();
    let out = coprime(&[
        "catalog",
        "--realize",
        "--catalog",
        file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bundled_catalog_lists_complete_orders() {
    let out = coprime(&["catalog", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["entries"].as_array().unwrap().len() > 90);
    assert!(json["complete_orders"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(36)));
}
