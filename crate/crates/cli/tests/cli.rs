use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn belldecomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belldecomp"))
        .args(args)
        .env_remove("BELLDECOMP_OUTPUT_DIR")
        .output()
        .expect("spawn belldecomp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_mes_fixture_passes() {
    let out = belldecomp(&[
        "verify",
        "--state",
        path(&fixture("state3.json")),
        "--channel",
        path(&fixture("mes3_channel.json")),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verify: 10/10 checks passed"), "{text}");
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_fails_when_tolerance_is_impossible() {
    let out = belldecomp(&[
        "verify",
        "--random",
        "2",
        "--instances",
        "2",
        "--tol-eq",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));

    let out = belldecomp(&["verify", "--random", "2", "--tol-eq=-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_prints_three_factor_structure() {
    let out = belldecomp(&[
        "decompose",
        "--channel",
        path(&fixture("nmes3_channel.json")),
        "--outcome",
        "2,3,4",
        "--convention",
        "bob-holds-first",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("sigma pair 1 mu=2  [[Y1, -Y2], [Y3, -Y4]]"),
        "{text}"
    );
    assert!(text.contains("sigma pair 2 mu=3  [[Y2, Y1], [Y4, Y3]]"));
    assert!(text.contains("sigma pair 3 mu=4  [[Y2, -Y1], [Y4, -Y3]]"));
    assert!(text.contains("decomposition matrix sigma^234"));
    assert!(text.contains("inverse factors:"));
}

#[test]
fn decompose_reports_missing_inverse() {
    let out = belldecomp(&[
        "decompose",
        "--channel",
        path(&fixture("product1_channel.json")),
        "--outcome",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("inverse: none"));
}

#[test]
fn teleport_product_channel_fails_criterion() {
    let out = belldecomp(&[
        "teleport",
        "--state",
        path(&fixture("qubit1_state.json")),
        "--channel",
        path(&fixture("product1_channel.json")),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("Y1*Y4 != Y2*Y3 fails for pair(s) 1"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn teleport_recovers_input() {
    for seed in ["0", "1", "2", "17"] {
        let out = belldecomp(&[
            "teleport",
            "--state",
            path(&fixture("state3.json")),
            "--channel",
            path(&fixture("nmes3_channel.json")),
            "--seed",
            seed,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stdout(&out).contains("fidelity: 1.000000000000"));
    }
}

#[test]
fn mismatched_sizes_are_usage_errors() {
    let out = belldecomp(&[
        "teleport",
        "--state",
        path(&fixture("qubit1_state.json")),
        "--channel",
        path(&fixture("mes3_channel.json")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1 qubits but channel has 3 pairs"));
}

#[test]
fn malformed_json_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"pairs": [[[1, 0], [0, 0]]]}"#).unwrap();
    let out = belldecomp(&["decompose", "--channel", path(&bad), "--outcome", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.json"));

    let missing = dir.path().join("nope.json");
    let out = belldecomp(&["decompose", "--channel", path(&missing), "--outcome", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_csv_layout() {
    let out = belldecomp(&[
        "sweep",
        "--state",
        path(&fixture("state3.json")),
        "--channel",
        path(&fixture("mes3_channel.json")),
        "--pair",
        "2",
        "--steps",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("theta,outcome,probability,abs_det_min,min_singular_value")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5 * 64);
    assert_eq!(rows[0][1], "111");
    assert_eq!(rows[63][1], "444");
    // Each theta block sums to one.
    for block in rows.chunks(64) {
        let total: f64 = block.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }
    // theta = pi/4 makes the swept pair maximally entangled again.
    let mid = &rows[2 * 64];
    assert_eq!(mid[0], "0.785398");
    assert_eq!(mid[3], "0.500000000000");
    assert_eq!(mid[4], "0.353553390593");
}

#[test]
fn sweep_rejects_bad_pair_index() {
    let out = belldecomp(&[
        "sweep",
        "--state",
        path(&fixture("qubit1_state.json")),
        "--channel",
        path(&fixture("diag1_channel.json")),
        "--pair",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_dir_env_redirects_relative_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_belldecomp"))
        .args([
            "sweep",
            "--state",
            path(&fixture("qubit1_state.json")),
            "--channel",
            path(&fixture("diag1_channel.json")),
            "--steps",
            "2",
            "--output",
            "sweep.csv",
        ])
        .env("BELLDECOMP_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
}

#[test]
fn unnormalized_input_is_rescaled_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let ch = dir.path().join("ch.json");
    std::fs::write(&ch, r#"{"pairs": [[[1, 0], [0, 0], [0, 0], [1, 0]]]}"#).unwrap();
    let out = belldecomp(&[
        "teleport",
        "--state",
        path(&fixture("qubit1_state.json")),
        "--channel",
        path(&ch),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning: pair 1"));
    assert!(stdout(&out).contains("recovery unitary up to scale: yes"));
}
