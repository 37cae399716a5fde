use std::path::Path;
use std::process::{Command, Output};

fn sol3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sol3")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, Vec<u8>) {
    let path = dir.join(name);
    let p = path.to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    let flag = if args[0] == "verify" { "--report" } else { "--out" };
    full.extend([flag, p]);
    let o = sol3(&full);
    (code(&o), std::fs::read(&path).unwrap_or_default())
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        &["surface", "--kind", "helicoid", "--K", "0.4", "--nu", "16", "--nv", "16", "--normals"][..],
        &["surface", "--kind", "catenoid", "--alpha", "-0.6", "--nu", "12", "--nv", "12"][..],
        &["section", "--kind", "catenoid", "--alpha", "-0.6", "--level", "0"][..],
        &["section", "--kind", "graph-s", "--level", "10"][..],
        &["verify", "--kind", "graph-s"][..],
    ]
    .iter()
    .enumerate()
    {
        let a = run_to(dir.path(), &format!("a{i}"), args);
        let b = run_to(dir.path(), &format!("b{i}"), args);
        assert_eq!(a.0, 0, "{args:?}");
        assert!(!a.1.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn impossible_tolerance_fails() {
    let o = sol3(&["verify", "--kind", "catenoid", "--alpha", "0.9", "--tol-scale", "1e-30"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
    assert_eq!(code(&sol3(&["verify", "--kind", "catenoid", "--alpha", "0.9"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&sol3(&["surface", "--kind", "helicoid", "--K", "0"])), 1);
    assert_eq!(code(&sol3(&["surface", "--kind", "torus"])), 1);
    assert_eq!(code(&sol3(&["section", "--kind", "helicoid", "--K", "0.4", "--level", "0"])), 1);
    assert_eq!(code(&sol3(&["frobnicate"])), 1);
    assert_eq!(code(&sol3(&["--help"])), 0);
    let o = sol3(&["surface", "--kind", "catenoid", "--alpha", "1.5"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha must lie in (-1, 1)"));
}

#[test]
fn period_prints_and_inverts() {
    let o = sol3(&["period", "--K", "0.4"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("W = 3.24512131352"), "{text}");
    let t = text.lines().find_map(|l| l.strip_prefix("T = ")).unwrap();
    let o = sol3(&["invert-period", "--T", t]);
    let k: f64 = String::from_utf8(o.stdout).unwrap().trim().strip_prefix("K = ").unwrap().parse().unwrap();
    assert!((k - 0.4).abs() < 1e-6);

    let o = sol3(&["period", "--K", "0"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stdout).unwrap().contains("W = 3.14159265359"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "kind = \"helicoid\"\nK = 0.4\nnu = 5\nnv = 7\n").unwrap();
    let c = cfg.to_str().unwrap();
    let count = |args: &[&str]| {
        let o = sol3(args);
        assert_eq!(code(&o), 0);
        String::from_utf8(o.stdout).unwrap().lines().filter(|l| l.starts_with("v ")).count()
    };
    assert_eq!(count(&["surface", "--config", c]), 35);
    assert_eq!(count(&["surface", "--config", c, "--nu", "3"]), 21);
}
