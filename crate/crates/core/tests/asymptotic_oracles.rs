mod common;

use num_complex::Complex64;
use rtemvdr::asymptotics::{
    assemble_xi, compute_c_vector, estimate_m1_m2, large_n_params, large_nn_center_scale,
    ratio_expectation, solve_sigma0, Calibration,
};
use rtemvdr::linalg::{vec_col_major, CMatrix, HermitianEigen, HpdFactor};
use rtemvdr::mvdr::output_snr;
use rtemvdr::scenario::{build_covariance, Scenario, SnapshotSampler, TextureLaw};
use rtemvdr::RteOptions;

use common::random_hpd;

#[test]
fn c_vector_matches_central_differences() {
    let s = Scenario::baseline();
    let sigma = build_covariance(&s);
    let s0 = s.look_vector();
    let sig0 = solve_sigma0(&sigma, 0.65, 1e-12).unwrap().matrix;
    let c = compute_c_vector(&sigma, &sig0, &s0).unwrap();
    let snr = |m: &CMatrix| output_snr(m, &sigma, &s0).unwrap();
    let h = 1e-5;
    for k in 0..20u64 {
        // Hermitian direction, unit max-entry scale
        let g = random_hpd(4, 100 + k) - CMatrix::identity(4, 4) * Complex64::new(1.0, 0.0);
        let e = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
        let step = e.clone() * Complex64::new(h, 0.0);
        let fd = (snr(&(&sig0 + &step)) - snr(&(&sig0 - &step))) / (2.0 * h);
        let lin = c.dotc(&vec_col_major(&e));
        assert!(lin.im.abs() < 1e-10 * (1.0 + lin.re.abs()), "direction {k}: {lin}");
        assert!(
            (fd - lin.re).abs() <= 1e-6 * (1.0 + fd.abs()),
            "direction {k}: fd {fd} vs linear {}",
            lin.re
        );
    }
}

#[test]
fn sigma0_expectation_matches_monte_carlo() {
    let s = Scenario::baseline();
    let sigma = build_covariance(&s);
    let sig0 = solve_sigma0(&sigma, 0.65, 1e-12).unwrap();
    let exact = ratio_expectation(&sig0.sigma_eigen, &sig0.eigenvalues).unwrap();
    let inv = HpdFactor::new(&sig0.matrix).unwrap().inverse();

    let sampler = SnapshotSampler::from_covariance(&sigma, TextureLaw::Constant);
    let (draws, chunks) = (1_000_000usize, 20usize);
    let mut sum = vec![[0.0f64; 2]; 16];
    let mut sum_sq = vec![[0.0f64; 2]; 16];
    for chunk in 0..chunks {
        let x = sampler.gaussian_part(draws / chunks, 9_000 + chunk as u64);
        for col in x.column_iter() {
            let col = col.into_owned();
            let q = col.dotc(&(&inv * &col)).re;
            for j in 0..4 {
                for i in 0..4 {
                    let v = col[i] * col[j].conj() / q;
                    let slot = i + 4 * j;
                    for (p, part) in [v.re, v.im].into_iter().enumerate() {
                        sum[slot][p] += part;
                        sum_sq[slot][p] += part * part;
                    }
                }
            }
        }
    }
    let n = draws as f64;
    for j in 0..4 {
        for i in 0..4 {
            let slot = i + 4 * j;
            let target = exact[(i, j)];
            for (p, want) in [target.re, target.im].into_iter().enumerate() {
                let mean = sum[slot][p] / n;
                let var = (sum_sq[slot][p] / n - mean * mean).max(0.0) * n / (n - 1.0);
                let se = (var / n).sqrt();
                assert!(
                    (mean - want).abs() <= 3.0 * se + 1e-12,
                    "entry ({i},{j}) part {p}: mc {mean} ± {se} vs {want}"
                );
            }
        }
    }
}

#[test]
fn vec_covariances_are_hermitian_psd_and_stable() {
    let s = Scenario::baseline();
    let calib = |seed| Calibration {
        n_cal: 500,
        n_reps: 400,
        seed,
    };
    let a = estimate_m1_m2(&s, 0.65, calib(1)).unwrap();
    let herm = (&a.m1 - a.m1.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(herm < 1e-12);
    let eig = HermitianEigen::new(&a.m1);
    assert!(eig.min() >= -1e-10 * eig.max());
    // M₂ is symmetric (not Hermitian)
    let sym = (&a.m2 - a.m2.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(sym < 1e-12);

    let xi = assemble_xi(&a.m1, &a.m2).unwrap();
    let xi_eig = nalgebra::SymmetricEigen::new(xi.clone());
    let top = xi_eig.eigenvalues.max();
    assert!(xi_eig.eigenvalues.min() >= -1e-10 * top);
    assert!((&xi - xi.transpose()).amax() < 1e-12);
}

#[test]
fn delta_method_sigma_is_seed_stable() {
    let s = Scenario::baseline();
    let run = |seed| {
        large_n_params(
            &s,
            0.65,
            Calibration {
                n_cal: 500,
                n_reps: 400,
                seed,
            },
            RteOptions::default(),
        )
        .unwrap()
    };
    let (a, b) = (run(11), run(12));
    assert_eq!(a.snr0, b.snr0);
    assert!(a.sigma_n > 0.0);
    assert!((a.sigma_n - b.sigma_n).abs() / a.sigma_n < 0.2);
}

#[test]
fn surrogate_center_scale_is_seed_stable() {
    let s = Scenario::baseline();
    let a = large_nn_center_scale(&s, 0.5, 60, 2000, 1).unwrap();
    let b = large_nn_center_scale(&s, 0.5, 60, 2000, 2).unwrap();
    assert!((a.center - b.center).abs() / a.center < 0.02);
    assert!((a.scale - b.scale).abs() / a.scale < 0.1);
}
