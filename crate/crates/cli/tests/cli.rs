use std::path::Path;
use std::process::{Command, Output};

fn rtemvdr(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtemvdr"))
        .args(args)
        .arg("--output-dir")
        .arg(out_dir)
        .output()
        .unwrap()
}

const SMALL: [&str; 8] = [
    "--n-trials",
    "100",
    "--n-cal",
    "200",
    "--n-reps",
    "160",
    "--surrogate-trials",
    "200",
];

#[test]
fn solve_rte_prints_certified_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let out = rtemvdr(&["solve-rte", "--rho", "0.65", "--n", "40"], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["iterations"].as_u64().unwrap() <= 200);
    assert!(v["independent_residual"].as_f64().unwrap() <= 1e-10);
    assert!(v["snr"].as_f64().unwrap() <= v["oracle_snr"].as_f64().unwrap());
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn asymptotics_reports_both_regimes() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["asymptotics", "--rho", "0.5", "--n", "40"];
    args.extend(SMALL);
    let out = rtemvdr(&args, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["snr0", "sigma_n", "gamma", "alpha", "delta", "center", "scale"] {
        assert!(v[key].as_f64().unwrap().is_finite(), "{key}");
    }
}

#[test]
fn sweep_and_render_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["sweep", "--rho", "0.5", "--n", "20,40"];
    args.extend(SMALL);
    let out = rtemvdr(&args, dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("regime,N,n,rho,seed,n_trials,ks,hellinger,tv,sym_kl,error")
    );
    assert_eq!(lines.count(), 4);

    let figs = dir.path().join("figs");
    let out = Command::new(env!("CARGO_BIN_EXE_rtemvdr"))
        .args(["render", "--input"])
        .arg(dir.path().join("sweep.csv"))
        .arg("--output-dir")
        .arg(&figs)
        .output()
        .unwrap();
    assert!(out.status.success());
    let svg = std::fs::read_to_string(figs.join("distance_rho0p5.svg")).unwrap();
    for regime in ["large_n", "large_nn"] {
        for metric in ["ks", "hellinger", "tv", "sym_kl"] {
            let tag = format!(r#"data-regime="{regime}" data-metric="{metric}""#);
            assert_eq!(svg.matches(&tag).count(), 1, "{tag}");
        }
    }
}

#[test]
fn recorded_cell_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["sweep", "--rho", "1.0", "--n", "20"];
    args.extend(SMALL);
    let out = rtemvdr(&args, dir.path());
    assert_eq!(out.status.code(), Some(2));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn inadmissible_grid_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let out = rtemvdr(&["sweep", "--rho", "0.1", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(!dir.path().join("sweep.csv").exists());
}

#[test]
fn clt_writes_samples_and_cdf_figure() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["clt", "--regime", "large_nn", "--rho", "0.65", "--n", "20,100"];
    args.extend(SMALL);
    let out = rtemvdr(&args, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summaries: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(summaries.len(), 2);
    assert!(summaries.iter().all(|s| s["regime"] == "large_nn"));
    let samples = dir.path().join("samples.csv");
    assert_eq!(std::fs::read_to_string(&samples).unwrap().lines().count(), 201);

    let figs = dir.path().join("figs");
    let status = Command::new(env!("CARGO_BIN_EXE_rtemvdr"))
        .args(["render", "--samples"])
        .arg(&samples)
        .arg("--output-dir")
        .arg(&figs)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(figs.join("cdf.svg").exists());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        r#"
rho_list = [0.9]
n_list = [20]
n_trials = 100
n_cal = 200
n_reps = 160
surrogate_trials = 200
regime = "large_nn"

[scenario]
n_sensors = 4
noise_floor_db = 0.0
interferer_angles_deg = [-35.0, 70.0]
interferer_inr_db = [10.0, 10.0]
look_angle_deg = 0.0
"#,
    )
    .unwrap();
    let out = rtemvdr(
        &["sweep", "--config", cfg.to_str().unwrap(), "--seed", "9"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("large_nn,4,20,0.9,9,100,"));
}
