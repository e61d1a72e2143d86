//! End-to-end checks of the command-line surface: subcommands, file formats,
//! manifests, exit codes, and reproducibility across reruns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use simplex_growth::io::{profile_from_csv, trace_from_csv, RunManifest, UrnOutput};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplex-growth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).expect("output exists")
}

#[test]
fn grow_writes_profile_trace_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("profile.csv");
    let cfg = config("weighted_d2.toml");
    let output = run(&[
        "grow",
        "--config",
        cfg.to_str().unwrap(),
        "--steps",
        "2000",
        "--out",
        out.to_str().unwrap(),
        "--trace-z",
        "--trace-y",
        "--seed",
        "7",
        "--threads",
        "2",
    ]);
    assert!(output.status.success(), "{output:?}");

    let profile = profile_from_csv(&read(&out)).unwrap();
    let total: f64 = profile.entries.iter().map(|e| e.count).sum();
    assert_eq!(total, 2003.0); // 2000 newcomers + the initial triangle

    let trace = trace_from_csv(&read(&dir.path().join("profile.z.csv"))).unwrap();
    assert_eq!(trace.len(), 2000);
    assert_eq!(trace.last().unwrap().0, 2000);

    let manifest: RunManifest =
        serde_json::from_str(&read(&dir.path().join("profile.manifest.json"))).unwrap();
    assert_eq!(manifest.subcommand, "grow");
    assert_eq!(manifest.seed, 7);
    assert_eq!(manifest.config.as_ref().unwrap().d, 2);
    assert_eq!(manifest.outputs.len(), 3);

    let y = read(&dir.path().join("profile.y.csv"));
    assert!(y.starts_with("w0,w1\n"));
    assert!(y.lines().count() > 500);
}

#[test]
fn grow_reruns_reproduce_outputs_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("apollonian_d3.toml");
    let mut texts = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let output = run(&[
            "grow",
            "--config",
            cfg.to_str().unwrap(),
            "--steps",
            "3000",
            "--replicas",
            "3",
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "11",
        ]);
        assert!(output.status.success());
        texts.push(read(&out));
    }
    assert_eq!(texts[0], texts[1]);

    // A different seed changes the counts.
    let out = dir.path().join("c.csv");
    assert!(run(&[
        "grow",
        "--config",
        cfg.to_str().unwrap(),
        "--steps",
        "3000",
        "--replicas",
        "3",
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "12",
    ])
    .status
    .success());
    assert_ne!(texts[0], read(&out));
}

#[test]
fn urn_and_star_cross_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("weighted_d2.toml");
    let urn_out = dir.path().join("urn.json");
    assert!(run(&[
        "urn",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        urn_out.to_str().unwrap(),
    ])
    .status
    .success());
    let urn: UrnOutput = serde_json::from_str(&read(&urn_out)).unwrap();
    assert_eq!(urn.types.len(), 3);
    assert!(urn.residual <= 1e-10 * urn.lambda);
    assert!((urn.pi_hat.iter().sum::<f64>() - 1.0).abs() < 1e-12);

    let pk_out = dir.path().join("pk.csv");
    let lambda = format!("{}", urn.lambda);
    assert!(run(&[
        "star",
        "--config",
        cfg.to_str().unwrap(),
        "--lambda",
        &lambda,
        "--kmax",
        "4",
        "--replicas",
        "5000",
        "--out",
        pk_out.to_str().unwrap(),
        "--seed",
        "3",
    ])
    .status
    .success());
    let pk = profile_from_csv(&read(&pk_out)).unwrap();
    assert_eq!(pk.entries.len(), 5);
    let total: f64 = pk.entries.iter().map(|e| e.fraction).sum();
    assert!(total > 0.5 && total <= 1.0 + 1e-9);
}

#[test]
fn star_rate_mode_prints_estimate() {
    let cfg = config("apollonian_d3.toml");
    let output = run(&[
        "star",
        "--config",
        cfg.to_str().unwrap(),
        "--lambda-star",
        "--weight",
        "0.5",
        "--steps",
        "2000",
        "--replicas",
        "2",
        "--seed",
        "5",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    // constant fitness: F(S_n)/n -> d - 2 = 1
    let value: f64 = text
        .split('=')
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 1.0).abs() < 0.01, "{text}");
}

#[test]
fn closed_form_modes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pk.csv");
    assert!(run(&[
        "closed-form",
        "--model",
        "B",
        "--d",
        "3",
        "--kmax",
        "10",
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .success());
    let p = profile_from_csv(&read(&out)).unwrap();
    assert!((p.entries[0].fraction - 0.4).abs() < 1e-12);

    let out2 = dir.path().join("wrt.csv");
    assert!(run(&[
        "closed-form",
        "--wrt",
        "--config",
        config("wrt_weighted.toml").to_str().unwrap(),
        "--kmax",
        "10",
        "--out",
        out2.to_str().unwrap(),
    ])
    .status
    .success());
    let p = profile_from_csv(&read(&out2)).unwrap();
    assert!((p.entries[0].fraction - 18.0 / 35.0).abs() < 1e-12);

    let out3 = dir.path().join("alt.csv");
    assert!(run(&[
        "closed-form",
        "--model",
        "B",
        "--d",
        "2",
        "--kmax",
        "5",
        "--d2-unnormalized",
        "--out",
        out3.to_str().unwrap(),
    ])
    .status
    .success());
    let p = profile_from_csv(&read(&out3)).unwrap();
    assert!((p.entries[0].fraction - 0.5).abs() < 1e-12);
}

#[test]
fn set_overrides_change_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.csv");
    let cfg = config("recursive_tree.toml");
    let output = run(&[
        "grow",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "d=2",
        "--set",
        "variant=\"B\"",
        "--steps",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{output:?}");
    let manifest: RunManifest =
        serde_json::from_str(&read(&dir.path().join("o.manifest.json"))).unwrap();
    assert_eq!(manifest.config.as_ref().unwrap().d, 2);
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "d = 1\nvariant = \"B\"\n[fitness]\nkind = \"constant\"\nf0 = 1.0\n[weights]\nkind = \"uniform01\"\n",
    )
    .unwrap();
    let out = dir.path().join("x.csv");
    let output = run(&[
        "grow",
        "--config",
        bad.to_str().unwrap(),
        "--steps",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn unknown_suite_is_usage_error() {
    let output = run(&["verify", "--suite", "weird"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_with_spent_budget_emits_partial_report() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let output = run(&[
        "verify",
        "--suite",
        "fast",
        "--budget",
        "0.0",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("SKIPPED"));
    let report: serde_json::Value = serde_json::from_str(&read(&report_path)).unwrap();
    assert_eq!(report["budget_exceeded"], serde_json::Value::Bool(true));
}

#[test]
fn thread_count_does_not_change_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("weighted_d2.toml");
    let mut texts = Vec::new();
    for (name, threads) in [("t1.csv", "1"), ("t4.csv", "4")] {
        let out = dir.path().join(name);
        let output = run(&[
            "grow",
            "--config",
            cfg.to_str().unwrap(),
            "--steps",
            "2000",
            "--replicas",
            "4",
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "21",
            "--threads",
            threads,
        ]);
        assert!(output.status.success());
        texts.push(read(&out));
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn urn_rejects_continuous_weights() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("urn.json");
    let output = run(&[
        "urn",
        "--config",
        config("recursive_tree.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}
