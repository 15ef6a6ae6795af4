//! End-to-end tests running the compiled binary: exit codes, precedence,
//! determinism, and the CSV contracts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_superlattice"));
    cmd.env_remove("SUPERLATTICE_PRECISION");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn temp_path(name: &str) -> PathBuf {
    let mut dir = std::env::temp_dir();
    dir.push(format!("superlattice-cli-test-{}-{name}", std::process::id()));
    dir
}

#[test]
fn transition_emits_single_json_object() {
    let out = run(&["transition", "--u", "3", "--v", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_start().starts_with('{'));
    let value = text
        .lines()
        .find(|l| l.contains("\"j_crit\""))
        .and_then(|l| l.split(':').nth(1))
        .and_then(|v| v.trim().trim_end_matches(',').parse::<f64>().ok())
        .expect("j_crit field");
    assert!((value - 0.0411035007).abs() < 1e-6);
}

#[test]
fn counts_reports_cluster_numbers() {
    let out = run(&["counts", "--sites", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for expected in ["\"sz_zero\": 256", "\"polarized\": 240", "\"boson\": 136"] {
        assert!(text.contains(expected), "missing {expected} in {text}");
    }
}

#[test]
fn scan_csv_contract_and_determinism() {
    let args = ["scan", "--u", "3", "--v", "0", "--jmax", "0.5", "--steps", "21",
        "--graph", "plaquette-ring"];
    let first = run(&args);
    assert!(first.status.success());
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "scan output must be byte-identical");
    let text = stdout(&first);
    let header = text.lines().find(|l| !l.starts_with('#')).expect("header line");
    assert_eq!(header, "jex_over_4j,e_afm,e_fm,ground");
    assert!(text.lines().any(|l| l.starts_with("# crossing_jex_over_4j = 0.04")));
    // every cell reparses at printed precision
    let mut labels = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 4);
        for cell in &cells[..3] {
            cell.parse::<f64>().unwrap_or_else(|_| panic!("non-numeric cell {cell}"));
        }
        assert!(["afm", "fm", "degenerate"].contains(&cells[3]));
        labels.push(cells[3].to_string());
    }
    assert_eq!(labels.len(), 21);
    let flips = labels.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(flips, 1, "one ground-label flip in {labels:?}");
}

#[test]
fn config_file_with_flag_override() {
    let config = temp_path("precedence.cfg");
    std::fs::write(&config, "# operating point\nu = 3\nv = 0\n").unwrap();
    let from_file = run(&["transition", "--config", config.to_str().unwrap()]);
    assert!(from_file.status.success());
    let overridden = run(&["transition", "--config", config.to_str().unwrap(), "--u", "2"]);
    assert!(overridden.status.success());
    // u = 2 moves the crossing outward relative to u = 3
    let parse = |o: &Output| {
        stdout(o)
            .lines()
            .find(|l| l.contains("\"j_crit\""))
            .and_then(|l| l.split(':').nth(1))
            .and_then(|v| v.trim().trim_end_matches(',').parse::<f64>().ok())
            .unwrap()
    };
    assert!((parse(&from_file) - 0.0411035007).abs() < 1e-6);
    assert!(parse(&overridden) > parse(&from_file));
    std::fs::remove_file(&config).ok();
}

#[test]
fn unknown_config_key_is_usage_error() {
    let config = temp_path("unknown.cfg");
    std::fs::write(&config, "mystery = 7\n").unwrap();
    let out = run(&["transition", "--u", "3", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("mystery"));
    std::fs::remove_file(&config).ok();
}

#[test]
fn bad_flag_value_names_the_key() {
    let out = run(&["transition", "--u", "abc"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--u"), "stderr: {}", stderr(&out));
}

#[test]
fn missing_required_key_is_usage_error() {
    let out = run(&["counts"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("sites"));
}

#[test]
fn domain_error_maps_to_exit_two() {
    let out = run(&["scan", "--graph", "grid-4x4", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SectorTooLarge"));
}

#[test]
fn frequencies_then_extract_round_trips() {
    let freqs = temp_path("freqs.csv");
    let out = run(&[
        "frequencies", "--j", "1", "--u", "12", "--v", "0", "--jex", "0", "--hbar", "1",
        "--output", freqs.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let extracted = run(&["extract", "--input", freqs.to_str().unwrap()]);
    assert!(extracted.status.success());
    let text = stdout(&extracted);
    let field = |name: &str| -> f64 {
        text.lines()
            .find(|l| l.contains(&format!("\"{name}\"")))
            .and_then(|l| l.split(':').nth(1))
            .and_then(|v| v.trim().trim_end_matches(',').parse().ok())
            .unwrap_or_else(|| panic!("field {name} in {text}"))
    };
    assert!((field("j") - 1.0).abs() < 1e-9);
    assert!((field("u") - 12.0).abs() < 1e-9);
    assert!(field("v").abs() < 1e-9);
    assert!(field("jex").abs() < 1e-9);
    std::fs::remove_file(&freqs).ok();
}

#[test]
fn json_format_override() {
    let out = run(&["frequencies", "--j", "1", "--u", "4", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_start().starts_with('['));
    assert!(text.contains("\"w1\""));
}

#[test]
fn precision_env_override() {
    let mut cmd = bin();
    cmd.args(["transition", "--u", "3", "--v", "0"]);
    cmd.env("SUPERLATTICE_PRECISION", "4");
    let out = cmd.output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let field = text
        .lines()
        .find(|l| l.contains("\"j_crit\""))
        .and_then(|l| l.split(':').nth(1))
        .map(|v| v.trim().trim_end_matches(',').to_string())
        .unwrap();
    assert_eq!(field, "0.0411", "full output: {text}");
}

#[test]
fn dw_spectrum_hubbard_bias_requires_plain_model() {
    let out = run(&["dw-spectrum", "--u", "3", "--jex", "0.1", "--delta", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let ok = run(&["dw-spectrum", "--u", "3", "--delta", "0.5"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).lines().count() >= 6); // header + 5 levels
}

#[test]
fn optics_reports_trap_quantities() {
    let out = run(&["optics", "--v1", "2", "--v2", "1", "--units", "natural"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"recoil_energy\": 0.5"));
    assert!(text.contains("\"effective_double_well\": false"));
    // 16 v2^2 > v1^2: real frequency
    assert!(text.contains("\"josephson_omega\": "));
    assert!(!text.contains("\"josephson_omega\": null"));
}
