//! Divergence sweep over the (ρ, n) grid and its flat CSV form.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::stats::{BinRule, DivergenceReport, EmpiricalDistribution, StandardNormal};

use super::clt::{
    large_n_standardizer, large_nn_standardizer, raw_draws, standardize, RegimeTag, SampleSet,
    Standardizer,
};
use super::config::ExperimentConfig;

pub const CSV_HEADER: [&str; 11] = [
    "regime", "N", "n", "rho", "seed", "n_trials", "ks", "hellinger", "tv", "sym_kl", "error",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub regime: RegimeTag,
    pub n_sensors: usize,
    pub n: usize,
    pub rho: f64,
    pub seed: u64,
    pub n_trials: usize,
    pub report: Option<DivergenceReport>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }
}

/// Distances of a sample set to `N(0, 1)`.
pub fn divergence_report(set: &SampleSet, bins: BinRule) -> Result<DivergenceReport> {
    let emp = EmpiricalDistribution::new(set.values.clone())?;
    DivergenceReport::against(&emp, &StandardNormal, bins)
}

/// Runs every (ρ, n, regime) cell. A failing cell is recorded in its row's
/// error column and the sweep continues.
pub fn divergence_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let bins = BinRule::from_count(cfg.histogram_bins);
    let mut regimes = Vec::new();
    if cfg.regime.includes_large_n() {
        regimes.push(RegimeTag::LargeN);
    }
    if cfg.regime.includes_large_nn() {
        regimes.push(RegimeTag::LargeNn);
    }

    let mut rows = Vec::new();
    for &rho in &cfg.rho_list {
        // Shared by every n for this ρ; errors are kept as messages so each
        // affected row can carry them.
        let large_n = cfg.regime.includes_large_n().then(|| {
            large_n_standardizer(cfg, rho)
                .map(|(s, _)| s)
                .map_err(|e| e.to_string())
        });
        for &n in &cfg.n_list {
            let raw = raw_draws(cfg, rho, n).map_err(|e| e.to_string());
            for &regime in &regimes {
                let cell = || -> std::result::Result<DivergenceReport, String> {
                    let raw = raw.as_ref().map_err(Clone::clone)?;
                    let std: Standardizer = match regime {
                        RegimeTag::LargeN => large_n
                            .clone()
                            .expect("regime selected")?,
                        RegimeTag::LargeNn => {
                            large_nn_standardizer(cfg, rho, n).map_err(|e| e.to_string())?.0
                        }
                    };
                    let set = standardize(cfg, rho, n, regime, &std, raw);
                    divergence_report(&set, bins).map_err(|e| e.to_string())
                };
                let (report, error) = match cell() {
                    Ok(r) => (Some(r), None),
                    Err(e) => (None, Some(e)),
                };
                rows.push(SweepRow {
                    regime,
                    n_sensors: cfg.scenario.n_sensors,
                    n,
                    rho,
                    seed: cfg.seed,
                    n_trials: cfg.n_trials,
                    report,
                    error,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let metrics: [String; 4] = match &row.report {
            Some(r) => [r.ks, r.hellinger, r.total_variation, r.sym_kl].map(|v| v.to_string()),
            None => Default::default(),
        };
        w.write_record([
            row.regime.as_str().to_string(),
            row.n_sensors.to_string(),
            row.n.to_string(),
            row.rho.to_string(),
            row.seed.to_string(),
            row.n_trials.to_string(),
            metrics[0].clone(),
            metrics[1].clone(),
            metrics[2].clone(),
            metrics[3].clone(),
            row.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let bad = |what: &str| Error::Config(format!("malformed CSV field {what}"));
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let regime = match &rec[0] {
            "large_n" => RegimeTag::LargeN,
            "large_nn" => RegimeTag::LargeNn,
            _ => return Err(bad("regime")),
        };
        let num = |i: usize| -> Result<f64> { rec[i].parse().map_err(|_| bad(CSV_HEADER[i])) };
        let error = (!rec[10].is_empty()).then(|| rec[10].to_string());
        let report = if rec[6].is_empty() {
            None
        } else {
            Some(DivergenceReport {
                ks: num(6)?,
                hellinger: num(7)?,
                total_variation: num(8)?,
                sym_kl: num(9)?,
            })
        };
        rows.push(SweepRow {
            regime,
            n_sensors: rec[1].parse().map_err(|_| bad("N"))?,
            n: rec[2].parse().map_err(|_| bad("n"))?,
            rho: num(3)?,
            seed: rec[4].parse().map_err(|_| bad("seed"))?,
            n_trials: rec[5].parse().map_err(|_| bad("n_trials"))?,
            report,
            error,
        });
    }
    Ok(rows)
}

pub fn write_sweep_file(rows: &[SweepRow], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_sweep_csv(rows, std::io::BufWriter::new(f))
}

pub fn read_sweep_file(path: &Path) -> Result<Vec<SweepRow>> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_sweep_csv(f)
}

/// Sample-set CSV used by the CDF overlay figure.
pub const SAMPLES_HEADER: [&str; 7] = ["regime", "N", "n", "rho", "seed", "index", "value"];

pub fn write_samples_csv<W: Write>(sets: &[SampleSet], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SAMPLES_HEADER)?;
    for set in sets {
        for (i, v) in set.values.iter().enumerate() {
            w.write_record([
                set.regime.as_str().to_string(),
                set.n_sensors.to_string(),
                set.n.to_string(),
                set.rho.to_string(),
                set.seed.to_string(),
                i.to_string(),
                v.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn read_samples_csv<R: Read>(input: R) -> Result<Vec<SampleSet>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(SAMPLES_HEADER) {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let bad = |what: &str| Error::Config(format!("malformed sample field {what}"));
    let mut sets: Vec<SampleSet> = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let regime = match &rec[0] {
            "large_n" => RegimeTag::LargeN,
            "large_nn" => RegimeTag::LargeNn,
            _ => return Err(bad("regime")),
        };
        let n_sensors: usize = rec[1].parse().map_err(|_| bad("N"))?;
        let n: usize = rec[2].parse().map_err(|_| bad("n"))?;
        let rho: f64 = rec[3].parse().map_err(|_| bad("rho"))?;
        let seed: u64 = rec[4].parse().map_err(|_| bad("seed"))?;
        let value: f64 = rec[6].parse().map_err(|_| bad("value"))?;
        match sets.last_mut() {
            Some(s) if s.regime == regime && s.n == n && s.rho == rho && s.n_sensors == n_sensors => {
                s.values.push(value)
            }
            _ => sets.push(SampleSet {
                values: vec![value],
                regime,
                n,
                n_sensors,
                rho,
                seed,
            }),
        }
    }
    Ok(sets)
}
