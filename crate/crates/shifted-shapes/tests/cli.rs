//! End-to-end checks of the command-line interface: determinism across
//! worker counts, format equivalence, and exit codes.

#![cfg(feature = "cli")]

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shifted-shapes"))
}

#[test]
fn sample_output_is_byte_identical_across_parallelism() {
    let run = |threads: &str| {
        let out = bin()
            .args([
                "sample",
                "plancherel",
                "--n",
                "300",
                "--trials",
                "8",
                "--seed",
                "4242",
                "--grid-points",
                "51",
            ])
            .env("SHIFTED_SHAPES_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    assert_eq!(run("1"), run("7"));
}

#[test]
fn csv_and_json_encode_the_same_payload() {
    let args = |fmt: &str| {
        vec![
            "shape".to_string(),
            "lsvk".to_string(),
            "--grid-points".to_string(),
            "33".to_string(),
            "--format".to_string(),
            fmt.to_string(),
        ]
    };
    let csv_out = bin().args(args("csv")).output().unwrap();
    let json_out = bin().args(args("json")).output().unwrap();
    assert!(csv_out.status.success() && json_out.status.success());

    let csv = String::from_utf8(csv_out.stdout).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&json_out.stdout).expect("valid json");
    let zs = json["z"].as_array().unwrap();
    let ts = json["t"].as_array().unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("z,t"));
    let mut count = 0;
    for (line, (z, t)) in lines.zip(zs.iter().zip(ts)) {
        let mut cols = line.split(',');
        let zc: f64 = cols.next().unwrap().parse().unwrap();
        let tc: f64 = cols.next().unwrap().parse().unwrap();
        assert!((zc - z.as_f64().unwrap()).abs() <= 1e-12);
        assert!((tc - t.as_f64().unwrap()).abs() <= 1e-12);
        count += 1;
    }
    assert_eq!(count, 33);
}

#[test]
fn sw_curve_center_matches_the_stored_regression() {
    // value of the c = 1 Schur-Weyl curve at z = 0, pinned at build time
    const OMEGA_SW1_AT_ZERO: f64 = 1.157_264_9;
    let out = bin()
        .args([
            "shape",
            "sw",
            "--c",
            "1",
            "--grid-points",
            "401",
            "--epsilon",
            "1e-2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let center = csv
        .lines()
        .skip(1)
        .map(|l| {
            let mut cols = l.split(',');
            let z: f64 = cols.next().unwrap().parse().unwrap();
            let t: f64 = cols.next().unwrap().parse().unwrap();
            (z, t)
        })
        .min_by(|a, b| a.0.abs().total_cmp(&b.0.abs()))
        .unwrap();
    assert!(center.0.abs() < 1e-9);
    assert!(
        (center.1 - OMEGA_SW1_AT_ZERO).abs() < 5e-3,
        "curve center {} vs stored {}",
        center.1,
        OMEGA_SW1_AT_ZERO
    );
}

#[test]
fn verify_subcommand_reports_pass() {
    let out = bin().args(["char", "verify", "--n", "4"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(!text.contains("FAIL"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // invalid arguments -> 2
    let out = bin()
        .args(["sample", "plancherel", "--n", "10", "--trials", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["shape", "sw", "--c", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // oracle bound exceeded -> 4
    let out = bin().args(["char", "table", "--n", "30"]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    // clap-level parse failures -> 2
    let out = bin().args(["shape", "unknown-curve"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rsk_encode_round_trip() {
    let out = bin()
        .args(["rsk", "encode", "--word", "1,c2,1", "--d", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["p"]["shape"], serde_json::json!([2, 1]));
    assert_eq!(json["q"]["shape"], serde_json::json!([2, 1]));
    // diagonal recording entries are never circled
    for cell in json["q"]["cells"].as_array().unwrap() {
        if cell["x"].as_u64() == cell["y"].as_u64().map(|y| y + 1) {
            assert_eq!(cell["circled"], serde_json::json!(false));
        }
    }
}

#[test]
fn char_table_values_are_exact_strings() {
    let out = bin().args(["char", "table", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["3"]["1,1,1"], serde_json::json!("1"));
    assert_eq!(json["3"]["3"], serde_json::json!("1/2"));
    assert_eq!(json["2,1"]["3"], serde_json::json!("-1"));
}

#[test]
fn shapes_out_streams_json_lines() {
    let dir = std::env::temp_dir().join("shifted-shapes-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shapes.jsonl");
    let out = bin()
        .args([
            "sample",
            "plancherel",
            "--n",
            "50",
            "--trials",
            "4",
            "--seed",
            "7",
            "--grid-points",
            "11",
            "--out",
            "-",
            "--shapes-out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 4);
    for line in lines.lines() {
        let parts: Vec<u32> = serde_json::from_str(line).unwrap();
        assert_eq!(parts.iter().map(|&p| p as u64).sum::<u64>(), 50);
    }
    std::fs::remove_file(&path).ok();
}
