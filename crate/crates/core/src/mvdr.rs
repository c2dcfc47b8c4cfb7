//! MVDR weights and the output-SNR functional
//! `SNR(C) = (s₀* C⁻¹ s₀)² / (s₀* C⁻¹ Σ C⁻¹ s₀)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, HpdFactor};

#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerOutput {
    pub weights: CVector,
    pub snr: f64,
}

fn nonzero(s0: &CVector) -> Result<()> {
    if s0.norm() > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument("steering vector is zero".into()))
    }
}

/// `C⁻¹ s₀ / (s₀* C⁻¹ s₀)`.
pub fn mvdr_weights(c: &CMatrix, s0: &CVector) -> Result<CVector> {
    nonzero(s0)?;
    let g = HpdFactor::new(c)?.solve(s0);
    let denom = s0.dotc(&g);
    Ok(g / denom)
}

/// Output SNR of the MVDR filter designed with `c` when the true
/// interference-plus-noise covariance is `sigma`.
pub fn output_snr(c: &CMatrix, sigma: &CMatrix, s0: &CVector) -> Result<f64> {
    nonzero(s0)?;
    let g = HpdFactor::new(c)?.solve(s0);
    snr_from_direction(&g, sigma, s0)
}

/// `|g* s₀|² / (g* Σ g)`, the SNR of any filter proportional to `g`.
pub fn snr_from_direction(g: &CVector, sigma: &CMatrix, s0: &CVector) -> Result<f64> {
    let gain = g.dotc(s0).norm_sqr();
    let power = g.dotc(&(sigma * g)).re;
    if !(power > 0.0) {
        return Err(Error::SingularMatrix);
    }
    Ok(gain / power)
}

/// `s₀* Σ⁻¹ s₀`, the SNR of the clairvoyant MVDR.
pub fn oracle_snr(sigma: &CMatrix, s0: &CVector) -> Result<f64> {
    nonzero(s0)?;
    let g = HpdFactor::new(sigma)?.solve(s0);
    Ok(s0.dotc(&g).re)
}

pub fn beamform(c: &CMatrix, sigma: &CMatrix, s0: &CVector) -> Result<BeamformerOutput> {
    let weights = mvdr_weights(c, s0)?;
    let snr = snr_from_direction(&weights, sigma, s0)?;
    Ok(BeamformerOutput { weights, snr })
}

/// Distortionless check `u* s₀`.
pub fn response(weights: &CVector, s0: &CVector) -> Complex64 {
    weights.dotc(s0)
}
