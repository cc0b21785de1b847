//! End-to-end checks of the binary: exit codes, file formats, config
//! resolution, and byte-level reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mdlab() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mdlab"));
    cmd.env_remove("MDLAB_WORKERS");
    cmd
}

fn run(args: &[&str]) -> Output {
    mdlab().args(args).output().expect("spawn mdlab")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const TAIL_HEADER: &str = "x,side,hits,reps,p_hat,p_lo,p_hi,normal_tail,ratio,ratio_lo,ratio_hi";

#[test]
fn coeffs_prints_known_tables() {
    let out = run(&["coeffs", "--p", "0.5", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,gamma_k,a_k,v_k");
    assert_eq!(lines.len(), 4);
    for (i, line) in lines[1..].iter().enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], (i + 1).to_string());
        assert_eq!(f[2].parse::<f64>().unwrap(), 1.0);
        assert_eq!(f[3].parse::<f64>().unwrap(), (i + 1) as f64);
    }
    // last row leaves gamma blank
    assert_eq!(lines[3].split(',').nth(1).unwrap(), "");

    let out = run(&["coeffs", "--p", "0.75", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let row3: Vec<&str> = text.lines().nth(3).unwrap().split(',').collect();
    let a3: f64 = row3[2].parse().unwrap();
    let v3: f64 = row3[3].parse().unwrap();
    assert!((a3 - 8.0 / 15.0).abs() <= 1e-15);
    assert!((v3 - 389.0 / 225.0).abs() <= 1e-15);
}

#[test]
fn normal_check_reports_clean_grid() {
    let out = run(&["normal", "check", "--grid", "0:6:0.25"]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    assert!(stdout_str(&out).contains("ok"));
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["coeffs", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("--p"));

    let out = run(&["definitely-not-a-subcommand"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

fn tail_args<'a>(out: &'a Path, extra: &[&'a str]) -> Vec<String> {
    let mut v: Vec<String> = [
        "erw",
        "tail-ratio",
        "--p",
        "0.5",
        "--n",
        "150",
        "--reps",
        "400",
        "--grid",
        "0.5:1.5:0.5",
        "--steps",
        "two-point:0.5,1.5,0.5",
        "--normalizer",
        "det",
        "--seed",
        "99",
        "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    v.push(out.display().to_string());
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

#[test]
fn tail_ratio_output_is_byte_identical_across_reruns_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    let d = dir.path().join("d.csv");

    assert!(mdlab().args(tail_args(&a, &["--workers", "1"])).output().unwrap().status.success());
    assert!(mdlab().args(tail_args(&b, &["--workers", "1"])).output().unwrap().status.success());
    assert!(mdlab().args(tail_args(&c, &["--workers", "4"])).output().unwrap().status.success());
    assert!(mdlab()
        .args(tail_args(&d, &[]))
        .env("MDLAB_WORKERS", "3")
        .output()
        .unwrap()
        .status
        .success());

    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap(), "rerun with the same seed must match");
    assert_eq!(bytes, fs::read(&c).unwrap(), "worker count must not change output");
    assert_eq!(bytes, fs::read(&d).unwrap(), "MDLAB_WORKERS must not change output");

    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.lines().next().unwrap(), TAIL_HEADER);
    // 3 grid points × both sides
    assert_eq!(text.lines().count(), 7);

    let manifest_path = dir.path().join("a.csv.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["command"], "erw tail-ratio");
    assert_eq!(manifest["config"]["seed"], "99");
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn invalid_workers_env_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = mdlab()
        .args(tail_args(&dir.path().join("x.csv"), &[]))
        .env("MDLAB_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("MDLAB_WORKERS"));
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.cfg");
    fs::write(&cfg, "p = 0.5\nn = 50\nsteps = constant\nseed = 7\nreps = 5\n").unwrap();

    let out = run(&["erw", "simulate", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "rep,t_n,s_n,m_n,qv,det_normalizer,self_normalizer,stat_det,stat_self"
    );
    assert_eq!(text.lines().count(), 6, "5 replicates from the file");

    let out = run(&["erw", "simulate", "--config", cfg.to_str().unwrap(), "--reps", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).lines().count(), 4, "flag overrides the file");
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "p = 0.5\nbogus = 1\n").unwrap();
    let out = run(&["coeffs", "--n", "3", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("unknown"));
}

#[test]
fn underflowing_grid_points_drop_warn_or_escalate() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("u.csv");

    // mixed grid: x = 9 underflows and is dropped with a warning
    let mut args = tail_args(&out_path, &["--workers", "1"]);
    let gi = args.iter().position(|a| a == "0.5:1.5:0.5").unwrap();
    args[gi] = "0.5:9:8.5".to_string();
    let out = mdlab().args(&args).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    assert!(stderr_str(&out).contains("underflow"));
    let text = fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 3, "only x = 0.5 survives, both sides");

    // same grid under --strict is a numeric failure
    args.push("--strict".to_string());
    let out = mdlab().args(&args).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // fully underflowing grid leaves nothing to estimate
    let mut args = tail_args(&out_path, &["--workers", "1"]);
    let gi = args.iter().position(|a| a == "0.5:1.5:0.5").unwrap();
    args[gi] = "9:9:1".to_string();
    let out = mdlab().args(&args).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_three() {
    let out = mdlab()
        .args(tail_args(Path::new("/nonexistent-dir/deep/x.csv"), &["--workers", "1"]))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ar1_tail_ratio_uses_the_same_schema() {
    let out = run(&[
        "ar1",
        "tail-ratio",
        "--theta",
        "0.4",
        "--noise",
        "uniform:1.0",
        "--n",
        "120",
        "--reps",
        "300",
        "--grid",
        "0.5:1:0.5",
        "--stat",
        "studentized",
        "--seed",
        "11",
        "--workers",
        "1",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    assert_eq!(text.lines().next().unwrap(), TAIL_HEADER);
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn ar1_coverage_emits_exactly_the_documented_fields() {
    let out = run(&[
        "ar1",
        "coverage",
        "--theta",
        "0.3",
        "--noise",
        "uniform:1.0",
        "--n",
        "100",
        "--kappa",
        "0.1",
        "--regime",
        "quantile",
        "--reps",
        "200",
        "--seed",
        "5",
        "--workers",
        "1",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|s| s.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["R", "binom_hi", "binom_lo", "coverage", "covered", "kappa"]);
    let coverage = obj["coverage"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&coverage));
    assert_eq!(obj["R"].as_u64().unwrap(), 200);
}
