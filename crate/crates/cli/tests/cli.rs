use std::path::PathBuf;

use reqlint_cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn reqlint(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("reqlint").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn lint_clean_document() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(&dir, "clean.txt", "# Doors\n\nREQ-1: The door shall close within 3 s.\n");
    let (code, out, _) = reqlint(&[
        "lint", &doc, "--catalog", &fixture("table1_catalog.json"),
        "--doc-list", &fixture("documents.tsv"), "--format", "json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["findings"].as_array().unwrap().len(), 0);
    assert_eq!(v["skipped"][0]["rule_id"], "54");
}

#[test]
fn lint_fixture_document() {
    let (code, out, err) = reqlint(&[
        "lint", &fixture("train_control.txt"), "--catalog", &fixture("table1_catalog.json"),
        "--doc-list", &fixture("documents.tsv"),
    ]);
    assert_eq!(code, 1, "{err}");
    let findings: Vec<_> = out.lines().filter(|l| l.contains(": ") && l.contains(" [")).collect();
    assert_eq!(findings.len(), 6, "{out}");
    assert!(findings[0].ends_with("train_control.txt:3:5: 160 [Deterministic] use \"function\" instead of \"functionality\" (suggestion: function)"));
    assert!(out.contains("skipped 54: not detectable (R1"));
}

#[test]
fn lint_json_round_trips() {
    let args = [
        "lint", &fixture("train_control.txt"), "--catalog", &fixture("table1_catalog.json"),
        "--doc-list", &fixture("documents.tsv"), "--format", "json",
    ];
    let (code, out, _) = reqlint(&args);
    assert_eq!(code, 1);
    let report: reqlint::Report = serde_json::from_str(&out).unwrap();
    assert_eq!(report.findings.len(), 6);
    assert_eq!(format!("{}\n", report.to_json_pretty()), out);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<_> = value.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, vec!["findings", "skipped", "stats"]);
    assert_eq!(reqlint(&args).1, out);
}

#[test]
fn lint_min_accuracy() {
    let base = [
        "lint", &fixture("train_control.txt"), "--catalog", &fixture("table1_catalog.json"),
        "--doc-list", &fixture("documents.tsv"), "--format", "json", "--min-accuracy",
    ];
    let count = |class: &str| {
        let mut args = base.to_vec();
        args.push(class);
        let (_, out, _) = reqlint(&args);
        serde_json::from_str::<reqlint::Report>(&out).unwrap().findings.len()
    };
    assert_eq!(count("HeuristicMedium"), 5);
    assert_eq!(count("deterministic"), 2);
    assert_eq!(reqlint(&[base[0], base[1], base[2], base[3], "--min-accuracy", "Best"]).0, 2);
}

#[test]
fn lint_exit_code_follows_filtered_findings() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write_temp(&dir, "low.txt", "REQ-7: The brake shall engage, i.e. quickly.\n");
    let args = ["lint", &doc, "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")];
    assert_eq!(reqlint(&args).0, 1);
    let mut filtered = args.to_vec();
    filtered.extend(["--min-accuracy", "HeuristicMedium"]);
    assert_eq!(reqlint(&filtered).0, 0);
}

#[test]
fn lint_missing_doc_list_fails_fast() {
    let (code, _, err) = reqlint(&["lint", &fixture("train_control.txt"), "--catalog", &fixture("table1_catalog.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("rule 24"), "{err}");
}

#[test]
fn lint_unreadable_inputs() {
    let (code, _, err) = reqlint(&["lint", "/nonexistent.txt", "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent.txt"));
    assert_eq!(reqlint(&["lint", &fixture("train_control.txt"), "--catalog", "/nonexistent.json"]).0, 2);
    assert_eq!(reqlint(&["lint", "--catalog", &fixture("table1_catalog.json")]).0, 2);
}

#[test]
fn lint_several_documents_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_temp(&dir, "a.txt", "The functionality stops.\n");
    let b = write_temp(&dir, "b.txt", "Functionality again.\n");
    let (code, out, _) = reqlint(&["lint", &b, &a, "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv"), "--format", "json"]);
    assert_eq!(code, 1);
    let report: reqlint::Report = serde_json::from_str(&out).unwrap();
    let docs: Vec<_> = report.findings.iter().map(|f| f.document.clone()).collect();
    assert_eq!(docs, vec![b, a]);
}

#[test]
fn lint_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_temp(&dir, "doc.cfg", "# structure\nrequirement_id_pattern = \"^[A-Z]+[0-9]+:\"\nheading_marker = =\n");
    let doc = write_temp(&dir, "d.txt", "= Doors\n\nR1: It shall close.\n");
    let (code, out, err) = reqlint(&["lint", &doc, "--config", &cfg, "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")]);
    assert_eq!(code, 1, "{err}");
    assert!(out.contains(" 50 [HeuristicHigh]"), "{out}");
    let (code, _, _) = reqlint(&["lint", &doc, "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")]);
    assert_eq!(code, 0);
    let bad = write_temp(&dir, "bad.cfg", "colour = red\n");
    assert_eq!(reqlint(&["lint", &doc, "--config", &bad, "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")]).0, 2);
}

#[test]
fn stats_on_synthetic_catalog() {
    let (code, out, _) = reqlint(&["stats", "--catalog", &fixture("sta_catalog.json")]);
    assert_eq!(code, 0);
    for needle in ["Deterministic 68 41%", "combined(det+high) 53%", "combined(det+high+medium) 64%", "R1 34 81%"] {
        assert!(out.contains(needle), "{needle} missing in\n{out}");
    }
    let (code, out, _) = reqlint(&["stats", "--catalog", &fixture("sta_catalog.json"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["combined"]["deterministic_high"], 53);
    assert_eq!(v["ingest"]["raw_count"], 192);
}

#[test]
fn stats_empty_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_temp(&dir, "empty.json", "{\"rules\": []}");
    let (code, out, _) = reqlint(&["stats", "--catalog", &empty]);
    assert_eq!(code, 0);
    assert!(out.contains("Deterministic 0 0%"));
    let bad = write_temp(&dir, "bad.json", "{\"rules\": [");
    assert_eq!(reqlint(&["stats", "--catalog", &bad]).0, 2);
}

#[test]
fn agreement() {
    let (code, out, _) = reqlint(&["agreement", &fixture("agreement_a.txt"), &fixture("agreement_b.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("kappa 0.846153846"), "{out}");
    let (_, out, _) = reqlint(&["agreement", &fixture("agreement_a.txt"), &fixture("agreement_a.txt"), "--scheme", "quadratic"]);
    assert!(out.contains("kappa 1.000000000"));
    let (code, out, _) = reqlint(&["agreement", &fixture("agreement_a.txt"), &fixture("agreement_b.txt"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["kappa"].as_f64().unwrap() - 11.0 / 13.0).abs() < 1e-9);
    let (code, _, err) = reqlint(&["agreement", &fixture("agreement_a.txt"), &fixture("agreement_disjoint.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("differ"));
    assert_eq!(reqlint(&["agreement", &fixture("agreement_a.txt"), &fixture("agreement_b.txt"), "--scheme", "cubic"]).0, 2);
}

#[test]
fn validate() {
    let (code, out, _) = reqlint(&["validate", "--catalog", &fixture("sta_catalog.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("166 rules"));

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("table1_catalog.json")).unwrap();
    let mut file: reqlint::catalog::CatalogFile = serde_json::from_str(&text).unwrap();
    let nd = file.rules.iter_mut().find(|r| r.id == "54").unwrap();
    nd.checker = Some(reqlint::catalog::CheckerBinding::new("regex"));
    let bad = write_temp(&dir, "bad.json", &file.to_json_pretty());
    let (code, out, _) = reqlint(&["validate", "--catalog", &bad]);
    assert_eq!(code, 1);
    assert!(out.contains("rule 54"));

    let truncated = write_temp(&dir, "t.json", &text[..text.len() / 2]);
    assert_eq!(reqlint(&["validate", "--catalog", &truncated]).0, 2);
}

#[test]
fn resource_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    // Each test runs in-process, so only the child binary sees the variable.
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_reqlint"))
        .args(["lint", &fixture("train_control.txt"), "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")])
        .env("REQLINT_RESOURCES", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("REQLINT_RESOURCES"));

    let bundled = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/resources");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_reqlint"))
        .args(["lint", &fixture("train_control.txt"), "--catalog", &fixture("table1_catalog.json"), "--doc-list", &fixture("documents.tsv")])
        .env("REQLINT_RESOURCES", &bundled)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(reqlint(&[]).0, 2);
    assert_eq!(reqlint(&["frobnicate"]).0, 2);
    assert_eq!(reqlint(&["stats"]).0, 2);
    assert_eq!(reqlint(&["--help"]).0, 0);
}
