//! f-divergences `D_f(P‖Q) = ∫ f(p/q) q dx` between a histogram density and
//! a reference density, evaluated bin by bin with `q` at bin midpoints.

use serde::Serialize;

use crate::error::{Error, Result};

use super::empirical::{BinRule, EmpiricalDistribution, Histogram};
use super::ks::ks_statistic;
use super::normal::Reference;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divergence {
    /// `f(t) = (√t − 1)²`
    Hellinger,
    /// `f(t) = ½|t − 1|`
    TotalVariation,
    /// `KL(P‖Q) + KL(Q‖P)` with `f(t) = t log t`
    SymmetricKl,
}

const NEGLIGIBLE_DENSITY: f64 = 1e-30;
const MAX_UNSUPPORTED_MASS: f64 = 0.05;

fn hellinger_f(t: f64) -> f64 {
    (t.sqrt() - 1.0).powi(2)
}

fn tv_f(t: f64) -> f64 {
    0.5 * (t - 1.0).abs()
}

fn kl_f(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.ln()
    }
}

/// Binned divergence for densities `p`, `q` on bins of the given widths.
///
/// Bins with `q = 0` contribute the continuous limit of `f(p/q) q`
/// (`p` for Hellinger, `p/2` for total variation). The symmetric KL only
/// sums bins where both densities are positive.
pub fn f_divergence_binned(p: &[f64], q: &[f64], widths: &[f64], kind: Divergence) -> f64 {
    p.iter()
        .zip(q)
        .zip(widths)
        .map(|((&p, &q), &w)| {
            let per_unit = match kind {
                Divergence::Hellinger if q > 0.0 => hellinger_f(p / q) * q,
                Divergence::Hellinger => p,
                Divergence::TotalVariation if q > 0.0 => tv_f(p / q) * q,
                Divergence::TotalVariation => 0.5 * p,
                Divergence::SymmetricKl if p > 0.0 && q > 0.0 => {
                    kl_f(p / q) * q + kl_f(q / p) * p
                }
                Divergence::SymmetricKl => 0.0,
            };
            per_unit * w
        })
        .sum()
}

/// Divergence between a histogram density and a reference law.
///
/// Reference mass outside the histogram range counts as `f(0) · mass` for
/// Hellinger and total variation.
pub fn f_divergence<R: Reference + ?Sized>(
    hist: &Histogram,
    reference: &R,
    kind: Divergence,
) -> Result<f64> {
    let widths = hist.widths();
    let q: Vec<f64> = hist.midpoints().iter().map(|&x| reference.pdf(x)).collect();
    let unsupported: f64 = hist
        .densities
        .iter()
        .zip(&q)
        .zip(&widths)
        .filter(|((_, &q), _)| q < NEGLIGIBLE_DENSITY)
        .map(|((&p, _), &w)| p * w)
        .sum();
    if unsupported > MAX_UNSUPPORTED_MASS {
        return Err(Error::SupportMismatch {
            fraction: unsupported,
        });
    }
    let q: Vec<f64> = q
        .into_iter()
        .map(|v| if v < NEGLIGIBLE_DENSITY { 0.0 } else { v })
        .collect();
    let inside = f_divergence_binned(&hist.densities, &q, &widths, kind);
    let lo = hist.edges[0];
    let hi = hist.edges[hist.edges.len() - 1];
    let outside = (1.0 - (reference.cdf(hi) - reference.cdf(lo))).max(0.0);
    let tail = match kind {
        Divergence::Hellinger => hellinger_f(0.0) * outside,
        Divergence::TotalVariation => tv_f(0.0) * outside,
        Divergence::SymmetricKl => 0.0,
    };
    Ok(inside + tail)
}

/// Divergence between two histograms on the same grid.
pub fn f_divergence_between(a: &Histogram, b: &Histogram, kind: Divergence) -> Result<f64> {
    if a.edges != b.edges {
        return Err(Error::DimensionMismatch {
            expected: a.edges.len(),
            actual: b.edges.len(),
        });
    }
    Ok(f_divergence_binned(
        &a.densities,
        &b.densities,
        &a.widths(),
        kind,
    ))
}

/// Distances of one sample set to a reference law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub ks: f64,
    pub hellinger: f64,
    pub total_variation: f64,
    pub sym_kl: f64,
}

impl DivergenceReport {
    pub fn against<R: Reference + ?Sized>(
        emp: &EmpiricalDistribution,
        reference: &R,
        bins: BinRule,
    ) -> Result<Self> {
        let hist = emp.histogram(bins);
        Ok(Self {
            ks: ks_statistic(emp, |x| reference.cdf(x)),
            hellinger: f_divergence(&hist, reference, Divergence::Hellinger)?,
            total_variation: f_divergence(&hist, reference, Divergence::TotalVariation)?,
            sym_kl: f_divergence(&hist, reference, Divergence::SymmetricKl)?,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.ks.is_finite()
            && self.hellinger.is_finite()
            && self.total_variation.is_finite()
            && self.sym_kl.is_finite()
    }
}
