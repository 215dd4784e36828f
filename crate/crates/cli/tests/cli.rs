use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use agentroof_cli::args::Cli;
use agentroof_cli::{build_report, EXIT_CONFIG, EXIT_INFEASIBLE};
use clap::Parser;

fn agentroof(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agentroof"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn missing_config_exits_2_and_names_path() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("absent.json");
    let out = agentroof(&["analyze", "--model", missing.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("absent.json"), "{stderr}");
}

#[test]
fn unknown_key_rejected_unless_allowed() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("hw.json");
    fs::write(
        &path,
        r#"{"name": "x", "peak_flops": {"16": 1e12}, "mem_bandwidth": 1e12,
            "mem_capacity": 1000000000000, "tdp": 700}"#,
    )
    .unwrap();
    let hw = path.to_str().unwrap();
    let out = agentroof(&["analyze", "--model", "toy", "--hardware", hw], &tmp.path().join("a"));
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tdp"));

    let out = agentroof(
        &["analyze", "--model", "toy", "--hardware", hw, "--allow-unknown-keys"],
        &tmp.path().join("b"),
    );
    assert!(out.status.success());
}

#[test]
fn unknown_preset_lists_choices() {
    let tmp = tempfile::tempdir().unwrap();
    let out = agentroof(&["analyze", "--hardware", "tpu9"], tmp.path());
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&out.stderr).contains("b200"));
}

#[test]
fn bad_grid_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = agentroof(&["sweep", "--grid", "B=1..x"], tmp.path());
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
}

#[test]
fn strict_flags_capacity_exceeded() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["analyze", "--model", "llama3-70b", "--hardware", "b200", "--context", "300k"];
    let out = agentroof(&args, &tmp.path().join("a"));
    assert!(out.status.success());
    let mut strict = args.to_vec();
    strict.push("--strict");
    let out = agentroof(&strict, &tmp.path().join("b"));
    assert_eq!(out.status.code(), Some(EXIT_INFEASIBLE));
}

#[test]
fn analyze_toy_matches_hand_values() {
    let tmp = tempfile::tempdir().unwrap();
    let out = agentroof(
        &["analyze", "--model", "toy", "--hardware", "unit", "--context", "1", "--format", "csv"],
        tmp.path(),
    );
    assert!(out.status.success());
    let rows = csv_rows(&tmp.path().join("analyze.csv"));
    let col = |name: &str| rows[0].iter().position(|h| h == name).unwrap();
    let decode = rows.iter().find(|r| r[col("phase")] == "decode").unwrap();
    // Toy: 32 params at 16 bits = 64 bytes; 8 KV bytes/token; decode at L=1
    // reads weights plus 2 cached tokens: 80 bytes for 72 FLOPs.
    assert_eq!(decode[col("bytes_per_token")], "80");
    assert_eq!(decode[col("flops_per_token")], "72");
    assert_eq!(decode[col("oi")], "0.9");
    assert_eq!(decode[col("cf_bytes")], "72");
    assert_eq!(decode[col("class")], "bandwidth-bound");
}

#[test]
fn compare_attention_mha_is_four_gqa() {
    let tmp = tempfile::tempdir().unwrap();
    let out = agentroof(&["compare-attention", "--context", "1k,300k", "--format", "csv"], tmp.path());
    assert!(out.status.success());
    let rows = csv_rows(&tmp.path().join("compare_attention.csv"));
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        let mha: f64 = row[2].parse().unwrap();
        let gqa: f64 = row[3].parse().unwrap();
        let mla: f64 = row[4].parse().unwrap();
        assert_eq!(mha, 4.0 * gqa);
        assert!(mla < gqa);
    }
    assert_eq!(rows[1][2], "393216000");
}

#[test]
fn format_selection_controls_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = agentroof(&["agent-profile", "--format", "svg"], tmp.path());
    assert!(out.status.success());
    let mut names: Vec<_> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["agent_profile.svg"]);
    assert!(out.stdout.is_empty());
}

#[test]
fn roofline_plot_has_default_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let out = agentroof(&["roofline-plot", "--format", "csv,svg"], tmp.path());
    assert!(out.status.success());
    let svg = fs::read_to_string(tmp.path().join("roofline.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    // 2 phases x 3 batches x 3 contexts.
    assert_eq!(csv_rows(&tmp.path().join("roofline.csv")).len(), 1 + 18);
}

#[test]
fn workload_sweep_rows_follow_turns() {
    let cli = Cli::parse_from(["agentroof", "sweep", "--workload", "chatbot", "--phase", "decode"]);
    let report = build_report(&cli.into_request()).unwrap();
    let (name, table) = &report.tables[0];
    assert_eq!(name, "sweep");
    assert_eq!(table.rows.len(), 5);
    let ctx = table.headers.iter().position(|h| h == "context_len").unwrap();
    let contexts: Vec<&str> = table.rows.iter().map(|r| r[ctx].as_str()).collect();
    assert_eq!(contexts, ["800", "1600", "2400", "3200", "4000"]);
}
