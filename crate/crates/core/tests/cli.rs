use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_golden-gaps"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn golden-gaps")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("golden-gaps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enumerate_small_radius() {
    let o = run(&["enumerate", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("re_exact,im_exact,re_float,im_float,slope_float\n"));
    assert!(s.contains("0/1+1/1*phi,0/1+1/1*phi,1.6180339887498949,1.6180339887498949,1\n"));
}

#[test]
fn zero_radius_is_a_config_error() {
    let o = run(&["enumerate", "--radius", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("radius"));
}

#[test]
fn unknown_flag_and_missing_subcommand_exit_2() {
    assert_eq!(
        run(&["gaps", "--radius", "5", "--colour", "red"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn exact_mode_guard() {
    let o = run(&["gaps", "--radius", "6000", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force-exact"));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("run.cfg");
    std::fs::write(&cfg, "# curve grid\nalpha_min = 1\nalpha_max = 3\nalpha_steps = 3\n").unwrap();
    let from_file = run(&["curve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    let lines: Vec<String> = stdout(&from_file).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,0,0"));
    let overridden = run(&["curve", "--config", cfg.to_str().unwrap(), "--alpha-steps", "5"]);
    assert_eq!(stdout(&overridden).lines().count(), 6);
    std::fs::write(&cfg, "alpha_steps = many\n").unwrap();
    assert_eq!(
        run(&["curve", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn gaps_to_file_with_summary() {
    let out = scratch("gaps20.csv");
    let o = run(&[
        "gaps",
        "--radius",
        "20",
        "--method",
        "bcz",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next(), Some("gap"));
    assert_eq!(csv.lines().count(), 110);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["n_gaps"], 109);
    assert!(summary["min_gap"].as_f64().unwrap() >= 1.0);
}

#[test]
fn volume_json() {
    let o = run(&["volume"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let total = v["closed_form"]["Vtotal"].as_f64().unwrap();
    assert!((total - 2.960_881_320_326_807).abs() < 1e-12);
    assert!(v["discrepancy"]["Vtotal"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn hspacing_is_reproducible_and_thread_independent() {
    let args = ["hspacing", "--thresholds", "1.5,2", "--samples", "20000", "--seed", "5"];
    let a = run(&args);
    let b = bin().args(args).env("GOLDEN_GAPS_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["query"]["seed"], 5);
    let one = run(&["hspacing", "--thresholds", "1", "--samples", "5000"]);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["estimate"], 1.0);
}

#[test]
fn bad_thread_count_is_rejected() {
    let o = bin()
        .args(["volume"])
        .env("GOLDEN_GAPS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbit_trace() {
    let o = run(&["orbit", "--a", "1", "--b", "1", "--steps", "1"]);
    assert_eq!(stdout(&o), "step,a,b,zone,return_time\n0,1,1,Zinf,1\n");
    let o = run(&["orbit", "--mode", "exact", "--a", "1/2", "--b", "1", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("step,a,b,zone,return_time,a_exact,b_exact\n0,0.5,1,Zinf,2,1/2+0/1*phi,1/1+0/1*phi\n")
    );
    assert_eq!(run(&["orbit", "--a", "0.1", "--b", "0.1"]).status.code(), Some(2));
}

#[test]
fn compare_analytic_column_matches_curve() {
    let o = run(&["compare", "--radius", "200", "--bins", "4", "--alpha-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let mids: Vec<(String, String)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let mid = (f[0].parse::<f64>().unwrap() + f[1].parse::<f64>().unwrap()) / 2.0;
            (mid.to_string(), f[4].to_string())
        })
        .collect();
    for (mid, pdf) in mids {
        let c = run(&["curve", "--alpha-min", &mid, "--alpha-max", &mid, "--alpha-steps", "1"]);
        let row = stdout(&c).lines().nth(1).unwrap().to_string();
        assert_eq!(row.split(',').nth(1).unwrap(), pdf);
    }
    let summary: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(summary["ks"].as_f64().unwrap() < 0.05);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = run(&["gaps", "--radius", "100"]);
    let b = run(&["gaps", "--radius", "100"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}
