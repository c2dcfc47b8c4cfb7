//! Deterministic SVG figures drawn from sweep and sample CSV files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::stats::{standard_normal_cdf, EmpiricalDistribution};

use super::clt::{RegimeTag, SampleSet};
use super::sweep::{read_samples_csv, read_sweep_file, SweepRow};

const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 240.0;
const MARGIN: f64 = 48.0;
const METRICS: [&str; 4] = ["ks", "hellinger", "tv", "sym_kl"];

fn colour(regime: RegimeTag) -> &'static str {
    match regime {
        RegimeTag::LargeN => "#1f77b4",
        RegimeTag::LargeNn => "#d62728",
    }
}

fn metric(row: &SweepRow, i: usize) -> Option<f64> {
    let r = row.report.as_ref()?;
    let v = [r.ks, r.hellinger, r.total_variation, r.sym_kl][i];
    v.is_finite().then_some(v)
}

struct Axes {
    x0: f64,
    y0: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Axes {
    fn new(x0: f64, y0: f64, xs: &[f64], ys: &[f64]) -> Self {
        let (xmin, xmax) = padded_range(xs);
        let (ymin, ymax) = padded_range(ys);
        Self { x0, y0, xmin, xmax, ymin, ymax }
    }

    fn px(&self, x: f64) -> f64 {
        self.x0 + MARGIN + (x - self.xmin) / (self.xmax - self.xmin) * (PANEL_W - 1.5 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        self.y0 + PANEL_H - MARGIN
            - (y - self.ymin) / (self.ymax - self.ymin) * (PANEL_H - 1.5 * MARGIN)
    }

    fn frame(&self, svg: &mut String, title: &str, xlabel: &str) {
        let (l, r) = (self.px(self.xmin), self.px(self.xmax));
        let (b, t) = (self.py(self.ymin), self.py(self.ymax));
        let _ = writeln!(
            svg,
            r#"<rect x="{l:.2}" y="{t:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
            r - l,
            b - t
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{title}</text>"#,
            (l + r) / 2.0,
            t - 8.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{xlabel}</text>"#,
            (l + r) / 2.0,
            b + 30.0
        );
        for (v, anchor, x, y) in [
            (self.xmin, "start", l, b + 14.0),
            (self.xmax, "end", r, b + 14.0),
        ] {
            let _ = writeln!(
                svg,
                r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-size="10">{v:.3}</text>"#
            );
        }
        for (v, y) in [(self.ymin, b), (self.ymax, t + 10.0)] {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{y:.2}" text-anchor="end" font-size="10">{v:.3e}</text>"#,
                l - 4.0
            );
        }
    }

    fn polyline(&self, svg: &mut String, pts: &[(f64, f64)], attrs: &str, stroke: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline {attrs} fill="none" stroke="{stroke}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }
}

fn padded_range(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        let pad = lo.abs().max(1.0) * 0.05;
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn open_svg(width: f64, height: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    s
}

fn legend(svg: &mut String, x: f64, y: f64, entries: &[(&str, &str)]) {
    for (i, (label, stroke)) in entries.iter().enumerate() {
        let yy = y + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}" stroke="{stroke}" stroke-width="2"/>"#,
            x + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11">{label}</text>"#,
            x + 26.0,
            yy + 4.0
        );
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn rho_key(rho: f64) -> String {
    format!("{rho}").replace('.', "p")
}

/// Divergence-versus-`n/N` figure for one ρ: one panel per metric, one
/// series per regime. Error rows are skipped.
pub fn distance_figure(rows: &[&SweepRow], rho: f64) -> String {
    let mut svg = open_svg(2.0 * PANEL_W, 2.0 * PANEL_H + 40.0);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="15">rho = {rho}</text>"#,
        PANEL_W
    );
    for (m, name) in METRICS.iter().enumerate() {
        let mut series: BTreeMap<&str, (RegimeTag, Vec<(f64, f64)>)> = BTreeMap::new();
        for row in rows {
            if let Some(v) = metric(row, m) {
                let ratio = row.n as f64 / row.n_sensors as f64;
                series
                    .entry(row.regime.as_str())
                    .or_insert_with(|| (row.regime, Vec::new()))
                    .1
                    .push((ratio, v));
            }
        }
        let xs: Vec<f64> = series.values().flat_map(|s| s.1.iter().map(|p| p.0)).collect();
        let ys: Vec<f64> = series.values().flat_map(|s| s.1.iter().map(|p| p.1)).collect();
        let axes = Axes::new(
            (m % 2) as f64 * PANEL_W,
            40.0 + (m / 2) as f64 * PANEL_H,
            &xs,
            &ys,
        );
        axes.frame(&mut svg, name, "n/N");
        for (tag, (regime, pts)) in &mut series {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let attrs = format!(r#"data-regime="{tag}" data-metric="{name}""#);
            axes.polyline(&mut svg, pts, &attrs, colour(*regime));
        }
    }
    legend(
        &mut svg,
        PANEL_W * 2.0 - 120.0,
        14.0,
        &[
            ("large_n", colour(RegimeTag::LargeN)),
            ("large_nn", colour(RegimeTag::LargeNn)),
        ],
    );
    svg.push_str("</svg>\n");
    svg
}

/// Writes one distance figure per ρ found in the sweep CSV. Returns the
/// files written, in ascending ρ order.
pub fn emit_figures(csv_path: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let rows = read_sweep_file(csv_path)?;
    if rows.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} contains no sweep rows",
            csv_path.display()
        )));
    }
    let mut by_rho: Vec<(f64, Vec<&SweepRow>)> = Vec::new();
    for row in &rows {
        match by_rho.iter_mut().find(|(r, _)| *r == row.rho) {
            Some((_, v)) => v.push(row),
            None => by_rho.push((row.rho, vec![row])),
        }
    }
    by_rho.sort_by(|a, b| a.0.total_cmp(&b.0));
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    for (rho, group) in by_rho {
        let path = out_dir.join(format!("distance_rho{}.svg", rho_key(rho)));
        write_file(&path, &distance_figure(&group, rho))?;
        written.push(path);
    }
    Ok(written)
}

/// Empirical CDFs of the sample sets overlaid on Φ.
pub fn cdf_figure(sets: &[SampleSet]) -> Result<String> {
    let dists = sets
        .iter()
        .map(|s| EmpiricalDistribution::new(s.values.clone()))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = (-4.0, 4.0);
    let grid: Vec<f64> = (0..=200).map(|i| lo + (hi - lo) * i as f64 / 200.0).collect();
    let w = 2.0 * PANEL_W;
    let mut svg = open_svg(w, 2.0 * PANEL_H);
    let axes = Axes {
        x0: 0.0,
        y0: 0.0,
        xmin: lo,
        xmax: hi,
        ymin: 0.0,
        ymax: 1.0,
    };
    // The single panel is drawn at double size.
    let _ = writeln!(svg, r#"<g transform="scale(2)">"#);
    axes.frame(&mut svg, "empirical CDF", "standardized SNR");
    let phi: Vec<(f64, f64)> = grid.iter().map(|&x| (x, standard_normal_cdf(x))).collect();
    axes.polyline(&mut svg, &phi, r#"data-series="normal""#, "black");
    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    let mut entries = vec![("N(0,1)".to_string(), "black")];
    for (k, (set, dist)) in sets.iter().zip(&dists).enumerate() {
        let stroke = palette[k % palette.len()];
        let pts: Vec<(f64, f64)> = grid.iter().map(|&x| (x, dist.ecdf(x))).collect();
        let attrs = format!(
            r#"data-regime="{}" data-n="{}" data-rho="{}""#,
            set.regime, set.n, set.rho
        );
        axes.polyline(&mut svg, &pts, &attrs, stroke);
        entries.push((format!("{} n={}", set.regime, set.n), stroke));
    }
    let _ = writeln!(svg, "</g>");
    let refs: Vec<(&str, &str)> = entries.iter().map(|(l, c)| (l.as_str(), *c)).collect();
    legend(&mut svg, 2.0 * MARGIN + 20.0, 2.0 * MARGIN, &refs);
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Writes the CDF overlay for a samples CSV to `out_dir/cdf.svg`.
pub fn emit_cdf_figure(samples_csv: &Path, out_dir: &Path) -> Result<PathBuf> {
    let f = std::fs::File::open(samples_csv).map_err(|e| Error::io(samples_csv, e))?;
    let sets = read_samples_csv(f)?;
    if sets.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} contains no samples",
            samples_csv.display()
        )));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let path = out_dir.join("cdf.svg");
    write_file(&path, &cdf_figure(&sets)?)?;
    Ok(path)
}
