use std::io::Write;

use rtemvdr::asymptotics::{large_n_params, large_nn_params};
use rtemvdr::harness::{
    divergence_report, divergence_sweep, emit_cdf_figure, emit_figures, large_n_standardizer,
    large_nn_standardizer, raw_draws, standardize, write_samples_csv, write_sweep_file,
    ExperimentConfig, RegimeTag, SampleSet,
};
use rtemvdr::mvdr::{oracle_snr, output_snr};
use rtemvdr::rte::rte_residual;
use rtemvdr::stats::BinRule;
use rtemvdr::{sample_snapshots, solve_rte, Error, Result};
use serde::Serialize;

use crate::args::RenderArgs;

/// Outcome of a command that may have recorded per-cell failures.
pub enum Outcome {
    Clean,
    CellErrors(usize),
}

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    let line = serde_json::to_string(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").map_err(|e| Error::io("<stdout>", e))
}

fn report_cell_error(what: &str, rho: f64, n: usize, e: &Error) {
    eprintln!("{what} rho={rho} n={n}: {e}");
}

fn cells(cfg: &ExperimentConfig) -> impl Iterator<Item = (f64, usize)> + '_ {
    cfg.rho_list
        .iter()
        .flat_map(|&rho| cfg.n_list.iter().map(move |&n| (rho, n)))
}

#[derive(Serialize)]
struct RteSummary {
    n_sensors: usize,
    n: usize,
    rho: f64,
    seed: u64,
    iterations: usize,
    residual: f64,
    independent_residual: f64,
    snr: f64,
    oracle_snr: f64,
    /// Row-major `[re, im]` pairs.
    matrix: Vec<Vec<[f64; 2]>>,
}

pub fn solve_rte_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    let sigma = cfg.scenario.covariance();
    let s0 = cfg.scenario.look_vector();
    let mut failures = 0;
    for (rho, n) in cells(cfg) {
        let summary = sample_snapshots(&cfg.scenario, n, cfg.seed).and_then(|batch| {
            let est = solve_rte(&batch, rho, cfg.rte)?;
            Ok(RteSummary {
                n_sensors: cfg.scenario.n_sensors,
                n,
                rho,
                seed: cfg.seed,
                iterations: est.iterations,
                residual: est.residual,
                independent_residual: rte_residual(&est.matrix, &batch, rho)?,
                snr: output_snr(&est.matrix, &sigma, &s0)?,
                oracle_snr: oracle_snr(&sigma, &s0)?,
                matrix: est
                    .matrix
                    .row_iter()
                    .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            })
        });
        match summary {
            Ok(s) => emit_json(&s)?,
            Err(e) => {
                report_cell_error("solve-rte", rho, n, &e);
                failures += 1;
            }
        }
    }
    Ok(outcome(failures))
}

#[derive(Serialize, Default)]
struct AsymptoticSummary {
    n_sensors: usize,
    n: usize,
    rho: f64,
    snr0: Option<f64>,
    sigma_n: Option<f64>,
    gamma: Option<f64>,
    alpha: Option<f64>,
    delta: Option<f64>,
    center: Option<f64>,
    scale: Option<f64>,
    errors: Vec<String>,
}

pub fn asymptotics_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut failures = 0;
    for &rho in &cfg.rho_list {
        let large_n = cfg
            .regime
            .includes_large_n()
            .then(|| large_n_params(&cfg.scenario, rho, cfg.calibration(), cfg.rte));
        for &n in &cfg.n_list {
            let mut s = AsymptoticSummary {
                n_sensors: cfg.scenario.n_sensors,
                n,
                rho,
                ..Default::default()
            };
            match &large_n {
                Some(Ok(p)) => {
                    s.snr0 = Some(p.snr0);
                    s.sigma_n = Some(p.sigma_n);
                }
                Some(Err(e)) => s.errors.push(format!("large_n: {e}")),
                None => {}
            }
            if cfg.regime.includes_large_nn() {
                match large_nn_params(&cfg.scenario, rho, n, cfg.surrogate_trials, cfg.seed) {
                    Ok(p) => {
                        s.gamma = Some(p.gamma);
                        s.alpha = Some(p.alpha);
                        s.delta = Some(p.delta);
                        s.center = Some(p.center);
                        s.scale = Some(p.scale);
                    }
                    Err(e) => s.errors.push(format!("large_nn: {e}")),
                }
            }
            if !s.errors.is_empty() {
                failures += 1;
            }
            emit_json(&s)?;
        }
    }
    Ok(outcome(failures))
}

#[derive(Serialize)]
struct CltSummary<'a> {
    regime: &'a str,
    n_sensors: usize,
    n: usize,
    rho: f64,
    seed: u64,
    n_trials: usize,
    mean: f64,
    std: f64,
    ks: f64,
}

pub fn clt_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    let bins = BinRule::from_count(cfg.histogram_bins);
    let mut sets: Vec<SampleSet> = Vec::new();
    let mut failures = 0;
    for &rho in &cfg.rho_list {
        let large_n = cfg
            .regime
            .includes_large_n()
            .then(|| large_n_standardizer(cfg, rho).map(|(s, _)| s));
        for &n in &cfg.n_list {
            let raw = match raw_draws(cfg, rho, n) {
                Ok(r) => r,
                Err(e) => {
                    report_cell_error("clt", rho, n, &e);
                    failures += 1;
                    continue;
                }
            };
            let mut standardizers = Vec::new();
            match &large_n {
                Some(Ok(s)) => standardizers.push((RegimeTag::LargeN, *s)),
                Some(Err(e)) => {
                    report_cell_error("clt large_n", rho, n, e);
                    failures += 1;
                }
                None => {}
            }
            if cfg.regime.includes_large_nn() {
                match large_nn_standardizer(cfg, rho, n) {
                    Ok((s, _)) => standardizers.push((RegimeTag::LargeNn, s)),
                    Err(e) => {
                        report_cell_error("clt large_nn", rho, n, &e);
                        failures += 1;
                    }
                }
            }
            for (tag, std) in standardizers {
                let set = standardize(cfg, rho, n, tag, &std, &raw);
                let (mean, sd) = mean_std(&set.values);
                let report = divergence_report(&set, bins)?;
                emit_json(&CltSummary {
                    regime: tag.as_str(),
                    n_sensors: set.n_sensors,
                    n,
                    rho,
                    seed: set.seed,
                    n_trials: set.values.len(),
                    mean,
                    std: sd,
                    ks: report.ks,
                })?;
                sets.push(set);
            }
        }
    }
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join("samples.csv");
    let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_samples_csv(&sets, std::io::BufWriter::new(file))?;
    eprintln!("wrote {}", path.display());
    Ok(outcome(failures))
}

pub fn sweep_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    let rows = divergence_sweep(cfg)?;
    let path = cfg.output_dir.join("sweep.csv");
    write_sweep_file(&rows, &path)?;
    eprintln!("wrote {}", path.display());
    let failures = rows.iter().filter(|r| r.is_error()).count();
    for row in rows.iter().filter(|r| r.is_error()) {
        eprintln!(
            "sweep {} rho={} n={}: {}",
            row.regime,
            row.rho,
            row.n,
            row.error.as_deref().unwrap_or_default()
        );
    }
    Ok(outcome(failures))
}

pub fn render_cmd(args: &RenderArgs) -> Result<Outcome> {
    if args.input.is_none() && args.samples.is_none() {
        return Err(Error::InvalidArgument(
            "render needs --input and/or --samples".into(),
        ));
    }
    if let Some(csv) = &args.input {
        for path in emit_figures(csv, &args.output_dir)? {
            eprintln!("wrote {}", path.display());
        }
    }
    if let Some(csv) = &args.samples {
        let path = emit_cdf_figure(csv, &args.output_dir)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(Outcome::Clean)
}

fn outcome(failures: usize) -> Outcome {
    if failures == 0 {
        Outcome::Clean
    } else {
        Outcome::CellErrors(failures)
    }
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
