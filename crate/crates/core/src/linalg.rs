//! Thin helpers over `nalgebra` for the dense complex Hermitian algebra used
//! throughout the crate.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigendecomposition `A = U diag(values) U*` of a Hermitian matrix with
/// eigenvalues sorted ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(a: &CMatrix) -> Self {
        let n = a.nrows();
        let eig = SymmetricEigen::new(hermitian_part(a));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Self { values, vectors }
    }

    /// Rebuilds `U diag(f(values)) U*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        with_spectrum(&self.vectors, &d)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// `U diag(d) U*` for a unitary `U`.
pub fn with_spectrum(u: &CMatrix, d: &[f64]) -> CMatrix {
    let mut scaled = u.clone();
    for (mut col, &v) in scaled.column_iter_mut().zip(d) {
        col *= Complex64::new(v, 0.0);
    }
    hermitian_part(&(scaled * u.adjoint()))
}

/// Hermitian PSD square root; negative round-off eigenvalues are clamped.
pub fn psd_sqrt(a: &CMatrix) -> CMatrix {
    HermitianEigen::new(a).map(|v| v.max(0.0).sqrt())
}

pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Cholesky factor of a Hermitian positive definite matrix, used for all
/// solves instead of explicit inverses.
#[derive(Debug, Clone)]
pub struct HpdFactor {
    chol: Cholesky<Complex64, Dyn>,
}

impl HpdFactor {
    pub fn new(a: &CMatrix) -> Result<Self> {
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::SingularMatrix);
        }
        let chol = Cholesky::new(hermitian_part(a)).ok_or(Error::SingularMatrix)?;
        let l = chol.l_dirty();
        let diag_max = (0..l.nrows()).fold(0.0_f64, |m, i| m.max(l[(i, i)].re));
        let diag_min = (0..l.nrows()).fold(f64::INFINITY, |m, i| m.min(l[(i, i)].re));
        // squared pivot ratio bounds the condition number from below
        if !(diag_min > 0.0) || (diag_min / diag_max).powi(2) < 1e-15 {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { chol })
    }

    pub fn solve(&self, b: &CVector) -> CVector {
        self.chol.solve(b)
    }

    pub fn solve_matrix(&self, b: &CMatrix) -> CMatrix {
        self.chol.solve(b)
    }

    /// Solves `L Y = B` with the lower Cholesky factor; `||y_i||^2 = b_i* A^-1 b_i`.
    pub fn whiten(&self, b: &CMatrix) -> CMatrix {
        let mut y = b.clone();
        self.chol.l_dirty().solve_lower_triangular_mut(&mut y);
        y
    }

    pub fn inverse(&self) -> CMatrix {
        hermitian_part(&self.chol.inverse())
    }
}

/// `x* A y`.
pub fn bilinear(x: &CVector, a: &CMatrix, y: &CVector) -> Complex64 {
    x.dotc(&(a * y))
}

/// Column-major stacking: `vec(A)[i + N j] = A[i, j]`.
pub fn vec_col_major(a: &CMatrix) -> CVector {
    CVector::from_column_slice(a.as_slice())
}

pub fn unvec_col_major(v: &CVector, n: usize) -> CMatrix {
    CMatrix::from_column_slice(n, n, v.as_slice())
}

/// Row vector `x* (y^t ⊗ I_N)` stored as a length-N² slice, so that its
/// product with `vec(A)` equals `x* A y`.
pub fn kron_row(x: &CVector, y: &CVector) -> CVector {
    let n = x.len();
    CVector::from_fn(n * n, |k, _| x[k % n].conj() * y[k / n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_hpd() -> CMatrix {
        let a = CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new((i * 3 + j) as f64 * 0.1, (i as f64 - j as f64) * 0.3)
        });
        &a * a.adjoint() + identity(3)
    }

    #[test]
    fn eigen_reconstructs_and_sorts() {
        let a = sample_hpd();
        let eig = HermitianEigen::new(&a);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let back = eig.map(|v| v);
        assert!(max_abs(&(back - &a)) < 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        let a = sample_hpd();
        let r = psd_sqrt(&a);
        assert!(max_abs(&(&r * &r - &a)) < 1e-12);
        assert!(max_abs(&(&r - r.adjoint())) < 1e-14);
    }

    #[test]
    fn factor_solves_and_whitens() {
        let a = sample_hpd();
        let f = HpdFactor::new(&a).unwrap();
        let b = CVector::from_fn(3, |i, _| Complex64::new(i as f64 + 1.0, -0.5));
        let x = f.solve(&b);
        assert!((&a * &x - &b).norm() < 1e-12);
        let y = f.whiten(&CMatrix::from_column_slice(3, 1, b.as_slice()));
        let q = b.dotc(&x).re;
        assert!((y.norm_squared() - q).abs() < 1e-12 * q);
        assert!(max_abs(&(f.inverse() * &a - identity(3))) < 1e-12);
    }

    #[test]
    fn singular_rejected() {
        let a = CMatrix::from_element(2, 2, ONE);
        assert!(matches!(HpdFactor::new(&a), Err(Error::SingularMatrix)));
    }

    #[test]
    fn kron_row_reproduces_bilinear_form() {
        let a = sample_hpd() + CMatrix::from_fn(3, 3, |i, j| Complex64::new(0.0, (i + 2 * j) as f64));
        let x = CVector::from_fn(3, |i, _| Complex64::new(1.0 - i as f64, 0.25 * i as f64));
        let y = CVector::from_fn(3, |i, _| Complex64::new(0.5, i as f64));
        let via_vec = kron_row(&x, &y).transpose() * vec_col_major(&a);
        let direct = bilinear(&x, &a, &y);
        assert!((via_vec[(0, 0)] - direct).norm() < 1e-12);
        assert_eq!(unvec_col_major(&vec_col_major(&a), 3), a);
    }
}
