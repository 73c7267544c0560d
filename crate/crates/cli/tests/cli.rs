use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soliton-forge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hierarchy_text_and_json() {
    let o = run(&["kdv", "hierarchy", "--n", "1", "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("q'' + 3q^2"));
    let o = run(&["kdv", "hierarchy", "--n", "0"]);
    assert!(stdout(&o).starts_with("F_0 = q\n"));
    let o = run(&["kdv", "hierarchy", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "soliton-forge/1");
    assert!(v["F"]["terms"].is_array() && v["P"]["coeffs"].is_array());
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["kdv", "hierarchy", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["kdv", "hierarchy", "--n", "1", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn help_lists_exit_codes() {
    let o = run(&["--help"]);
    let s = stdout(&o);
    for code in ["  3  ", "  4  ", "  5  ", "  6  ", "  7  "] {
        assert!(s.contains(code), "missing {code:?}");
    }
}

#[test]
fn genus_one_flow_reports_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["kdv", "flow", "--cnoidal", "1,0,-1", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("abel_slope=-2.000000 "));
    for f in ["trajectory.csv", "reconstruction.csv", "abel.csv"] {
        assert!(dir.path().join(f).exists());
    }
}

#[test]
fn genus_two_flow_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.json");
    std::fs::write(
        &cfg,
        r#"{"curve":{"branch_points":[-2,-1,0,1,2]},"start":[{"lambda":-1.5,"sign":1},{"lambda":0.5,"sign":1}],"x_range":[0,5],"tol":1e-12}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let o =
        run(&["kdv", "flow", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["abel_drift"][0].as_f64().unwrap() < 1e-6);
    assert!((v["abel_slope"].as_f64().unwrap() + 2.0).abs() < 1e-6);
    let header = std::fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(header.starts_with("x,lambda1,lambda2,s1,s2,q\n"));
}

fn read_all(dir: &Path) -> Vec<String> {
    ["trajectory.csv", "reconstruction.csv", "abel.csv"]
        .iter()
        .map(|f| std::fs::read_to_string(dir.join(f)).unwrap())
        .collect()
}

#[test]
fn seeded_flow_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    for (d, seed) in [(&a, "5"), (&b, "5"), (&c, "6")] {
        let o = run(&[
            "kdv",
            "flow",
            "--branch-points=-2,-1,0,1,2",
            "--seed",
            seed,
            "--samples",
            "201",
            "--out",
            d.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(read_all(&a), read_all(&b));
    assert_ne!(read_all(&a), read_all(&c));
    // Seventeen significant digits.
    let line = read_all(&a)[0].lines().nth(1).unwrap().to_string();
    let first = line.split(',').nth(1).unwrap();
    assert_eq!(first.split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
}

#[test]
fn degenerate_curve_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["kdv", "flow", "--branch-points=-2,-1,-1,1,2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_errors_exit_four() {
    let o = run(&["kdv", "flow", "--config", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "kdv",
        "flow",
        "--branch-points=-2,-1,0,1,2",
        "--start=0.5:+1,-1.5:+1,3:+1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["kdv", "flow", "--cnoidal", "1,0,-1", "--tol=-1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn identity_json() {
    let o = run(&["identity", "--size", "8", "--trials", "200", "--seed", "7", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"], 0);
    assert!(v["checks"].as_u64().unwrap() > 200);
}

#[test]
fn nls_commands() {
    let o = run(&["nls", "hierarchy", "--n", "4"]);
    assert!(stdout(&o).contains("35/64"));
    let o = run(&["nls", "conditions", "--n", "2", "--format", "latex"]);
    assert!(o.status.success() && stdout(&o).contains("R_A"));
    let o = run(&["nls", "check", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"], 0);
}

#[test]
fn elliptic_commands() {
    let o = run(&["elliptic", "cn", "--m", "0", "--u", "1.0"]);
    let cn: f64 = stdout(&o).trim().parse().unwrap();
    assert!((cn - 1.0f64.cos()).abs() < 1e-15);
    let o = run(&["elliptic", "K", "--m", "0", "--format", "csv"]);
    assert!(stdout(&o).contains("1.5707963267948966e0"));
    let o = run(&["elliptic", "profile", "--samples", "5"]);
    let s = stdout(&o);
    assert!(s.starts_with("x,u,u',u'',u''',u''''\n"));
    assert_eq!(s.lines().count(), 6);
}

#[test]
fn evolve_stays_on_the_curve() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "kdv",
        "evolve",
        "--nodes",
        "256",
        "--t-end",
        "0.02",
        "--format",
        "json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["curve_drift"].as_f64().unwrap() < 1e-2);
    assert!(dir.path().join("evolve.csv").exists());
}

#[test]
fn bad_thread_count() {
    let o = Command::new(env!("CARGO_BIN_EXE_soliton-forge"))
        .args(["identity", "--trials", "2"])
        .env("SOLITON_FORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}
