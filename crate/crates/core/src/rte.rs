//! Regularized Tyler estimator:
//! `C = (1−ρ) (1/n) Σ x_i x_i* / ((1/N) x_i* C⁻¹ x_i) + ρ I`,
//! solved by plain Picard iteration from the identity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, identity, max_abs, CMatrix, HpdFactor};
use crate::scenario::SnapshotBatch;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RteOptions {
    /// Relative max-norm fixed-point residual to reach.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RteOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RteEstimate {
    pub matrix: CMatrix,
    pub rho: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Lower end of the admissible interval `(max(0, 1 − n/N), 1]`.
pub fn rho_lower_bound(n: usize, n_sensors: usize) -> f64 {
    (1.0 - n as f64 / n_sensors as f64).max(0.0)
}

pub fn check_rho(rho: f64, n: usize, n_sensors: usize) -> Result<()> {
    let lower = rho_lower_bound(n, n_sensors);
    if rho > lower && rho <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidRho {
            rho,
            lower,
            n,
            n_sensors,
        })
    }
}

/// Snapshots rescaled to unit norm. The estimator only sees directions, so
/// this is exact and removes the texture from the arithmetic altogether.
fn directions(batch: &SnapshotBatch) -> Result<CMatrix> {
    let mut u = batch.samples.clone();
    for (i, mut col) in u.column_iter_mut().enumerate() {
        let norm = col.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::DegenerateSnapshot { index: i });
        }
        col /= Complex64::new(norm, 0.0);
    }
    Ok(u)
}

/// One application of the fixed-point map to `c`, given unit-norm snapshots.
fn fixed_point_map(c: &CMatrix, u: &CMatrix, rho: f64) -> Result<CMatrix> {
    let (dim, n) = u.shape();
    let factor = HpdFactor::new(c)?;
    let y = factor.whiten(u);
    let scale = (1.0 - rho) * dim as f64 / n as f64;
    let mut weighted = u.clone();
    for (i, mut col) in weighted.column_iter_mut().enumerate() {
        let q = y.column(i).norm_squared();
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::SingularMatrix);
        }
        col *= Complex64::new(scale / q, 0.0);
    }
    let mut next = weighted * u.adjoint();
    for k in 0..dim {
        next[(k, k)] += rho;
    }
    Ok(hermitian_part(&next))
}

pub fn solve_rte(batch: &SnapshotBatch, rho: f64, opts: RteOptions) -> Result<RteEstimate> {
    let (dim, n) = batch.samples.shape();
    if n == 0 {
        return Err(Error::InvalidArgument("empty snapshot batch".into()));
    }
    check_rho(rho, n, dim)?;
    let u = directions(batch)?;

    let mut c = identity(dim);
    let mut residual = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        let next = fixed_point_map(&c, &u, rho)?;
        residual = max_abs(&(&next - &c)) / max_abs(&c);
        if residual <= opts.tol {
            return Ok(RteEstimate {
                matrix: c,
                rho,
                iterations: iter,
                residual,
            });
        }
        c = next;
    }
    Err(Error::NonConvergence {
        what: "regularized Tyler iteration",
        iterations: opts.max_iter,
        residual,
    })
}

/// `‖C − F(C)‖_max / ‖C‖_max`, evaluated from the raw snapshots with a fresh
/// inverse of `C`.
pub fn rte_residual(c: &CMatrix, batch: &SnapshotBatch, rho: f64) -> Result<f64> {
    let (dim, n) = batch.samples.shape();
    if c.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: c.nrows(),
        });
    }
    let inv = HpdFactor::new(c)?.inverse();
    let mut f = CMatrix::zeros(dim, dim);
    for x in batch.samples.column_iter() {
        let q = x.dotc(&(&inv * x)).re / dim as f64;
        if !(q > 0.0) {
            return Err(Error::SingularMatrix);
        }
        f += (x * x.adjoint()).scale((1.0 - rho) / (n as f64 * q));
    }
    for k in 0..dim {
        f[(k, k)] += rho;
    }
    Ok(max_abs(&(c - f)) / max_abs(c))
}
