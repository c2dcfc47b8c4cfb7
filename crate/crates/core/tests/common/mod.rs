#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rtemvdr::linalg::{CMatrix, HermitianEigen};
use rtemvdr::rng;

/// Haar-ish unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut r = rng::stream(seed);
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)
    });
    HermitianEigen::new(&(&g + g.adjoint())).vectors
}

pub fn random_hpd(n: usize, seed: u64) -> CMatrix {
    let mut r = rng::stream(seed);
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)
    });
    &g * g.adjoint() + CMatrix::identity(n, n) * Complex64::new(0.5, 0.0)
}

pub fn rel_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
        / b.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, var.sqrt())
}
