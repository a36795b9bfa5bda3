use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_agfrft"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn fixture(dir: &Path) -> (PathBuf, PathBuf) {
    let graph = write(dir, "g.csv", "0,1,1.0\n1,2,0.5\n2,3,2.0\n0,2,0.3\n");
    let signal = write(dir, "s.csv", "1.0\n-2.0\n0.5\n3.0\n");
    (graph, signal)
}

fn parse_complex(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

fn transform(graph: &Path, signal: &Path, extra: &[&str]) -> Vec<(f64, f64)> {
    let mut args = vec!["transform", "--graph", graph.to_str().unwrap(), "--signal", signal.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    parse_complex(&stdout(&o))
}

#[test]
fn zero_order_gfrft_returns_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let (g, s) = fixture(dir.path());
    let out = transform(&g, &s, &["--kind", "gfrft", "--alpha", "0"]);
    let want = [1.0, -2.0, 0.5, 3.0];
    for ((re, im), w) in out.iter().zip(want) {
        assert!((re - w).abs() < 1e-12 && im.abs() < 1e-12);
    }
}

#[test]
fn forward_then_inverse_recovers_signal() {
    let dir = tempfile::tempdir().unwrap();
    let (g, s) = fixture(dir.path());
    let spec = dir.path().join("spec.csv");
    let common = ["--kind", "agfrft-ii", "--theta", "1.0", "--alpha", "0.5"];
    let mut fwd = common.to_vec();
    fwd.extend(["--out", spec.to_str().unwrap()]);
    let o = run(&[&["transform", "--graph", g.to_str().unwrap(), "--signal", s.to_str().unwrap()], &fwd[..]].concat());
    assert!(o.status.success());
    let mut inv = common.to_vec();
    inv.push("--inverse");
    let back = transform(&g, &spec, &inv);
    for ((re, im), w) in back.iter().zip([1.0, -2.0, 0.5, 3.0]) {
        assert!((re - w).abs() < 1e-9 && im.abs() < 1e-9, "{re} {im}");
    }
}

#[test]
fn type_i_at_zero_angle_matches_gfrft() {
    let dir = tempfile::tempdir().unwrap();
    let (g, s) = fixture(dir.path());
    let a = transform(&g, &s, &["--kind", "agfrft-i", "--theta", "0", "--alpha", "0.3"]);
    let b = transform(&g, &s, &["--kind", "gfrft", "--alpha", "0.3"]);
    for (p, q) in a.iter().zip(&b) {
        assert!((p.0 - q.0).abs() < 1e-10 && (p.1 - q.1).abs() < 1e-10);
    }
}

#[test]
fn check_properties_reports_and_passes() {
    let o = run(&["check-properties", "--n", "6", "--seed", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("EXPECTED-FAIL"), "{text}");
    assert!(!text.contains(" FAIL "), "{text}");
}

#[test]
fn timeseries_results_respect_dominance() {
    let o = run(&["timeseries", "--t", "24", "--sigma", "1", "--methods", "gfrft,agfrft-i,agfrft-ii"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    let mse = |m: &str| -> f64 { rows.iter().find(|r| r[col("method")] == m).unwrap()[col("mse")].parse().unwrap() };
    assert!(mse("agfrft-i") <= mse("gfrft"));
    assert!(mse("agfrft-ii") <= mse("gfrft"));
}

#[test]
fn denoise_grid_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (g, s) = fixture(dir.path());
    let r = write(dir.path(), "r.csv", "0.8\n-1.7\n0.6\n2.5\n");
    let o = run(&[
        "denoise-grid",
        "--graph",
        g.to_str().unwrap(),
        "--signal",
        s.to_str().unwrap(),
        "--reference",
        r.to_str().unwrap(),
        "--kind",
        "agfrft-ii",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("method,axis,family,theta,alpha,kappa,mse,psnr\nagfrft-ii,yaw,df,"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["check-properties", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["transform", "--graph", "g.csv", "--signal", "s.csv", "--kind", "bogus"]).status.code(), Some(2));
    let missing = run(&["image", "--in", "/nonexistent/input.pgm"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&missing.stderr).is_empty());
}

#[test]
fn help_lists_defaults() {
    let o = run(&["timeseries", "--help"]);
    let text = stdout(&o);
    assert!(text.contains("[default: 0.01]"), "{text}");
    assert!(text.contains("[default: 1000]"), "{text}");
    assert!(text.contains("[default: 100,200,300]"), "{text}");
}
