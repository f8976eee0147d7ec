use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn deckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deckit")).args(args).output().unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn rank_prints_scores() {
    let edges = fixture("rank/path.txt");
    let out = deckit(&["rank", "--edges", path(&edges)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let scores: Vec<f64> = text
        .lines()
        .take(3)
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    for (s, want) in scores.iter().zip([0.0, 1.0, 2.0]) {
        assert!((s - want).abs() < 1e-10);
    }
}

#[test]
fn cohomology_writes_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let (v, e) = (fixture("annulus/vertices.txt"), fixture("annulus/elements.txt"));
    let out = deckit(&["cohomology", "--vertices", path(&v), "--elements", path(&e), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("harmonic rank: 1"));
    assert!(dir.path().join("harmonic_0.txt").exists());
    assert!(dir.path().join("harmonic_0_field.txt").exists());
}

#[test]
fn sensor_and_darcy_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let pts = fixture("circle20.txt");
    let out = deckit(&["sensor", "--points", path(&pts), "--radius", "0.4", "--out", d]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("edge_magnitudes.txt").exists());

    let (v, e) = (fixture("darcy_square/vertices.txt"), fixture("darcy_square/elements.txt"));
    let out = deckit(&["darcy", "--vertices", path(&v), "--elements", path(&e), "--inflow", "0", "-1", "--out", d]);
    assert_eq!(out.status.code(), Some(0));
    for f in ["flux.txt", "pressure.txt", "velocity.txt"] {
        assert!(dir.path().join(f).exists());
    }
}

#[test]
fn input_errors_exit_with_one() {
    let missing = deckit(&["rank", "--edges", "/nonexistent/edges.txt"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());
    assert_eq!(deckit(&["rank"]).status.code(), Some(1));
    assert_eq!(deckit(&["bogus"]).status.code(), Some(1));
    let pts = fixture("circle20.txt");
    assert_eq!(deckit(&["sensor", "--points", path(&pts), "--radius", "-1"]).status.code(), Some(1));
    assert_eq!(deckit(&["--help"]).status.code(), Some(0));
}
