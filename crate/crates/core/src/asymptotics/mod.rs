//! Deterministic equivalents and CLT parameters for the output SNR of the
//! RTE-based MVDR beamformer in the large-n and large-(N,n) regimes.

pub mod delta_method;
pub mod equivalent;
pub mod fixed_point;
pub mod sigma0;

pub use delta_method::{
    assemble_xi, c_tilde, compute_c_vector, delta_method_sigma_n, estimate_m1_m2,
    estimate_m1_m2_with, large_n_params, snr0, Calibration, LargeNParams, VecCovariances,
};
pub use equivalent::{
    gaussian_equivalent_s_tilde, large_nn_center_scale, large_nn_params, loading_factor,
    s_tilde_from_gaussian_part, CenterScale, LargeNnParams,
};
pub use fixed_point::{
    compute_alpha, delta_from_eigenvalues, gamma_from_eigenvalues, solve_delta, solve_gamma,
};
pub use sigma0::{gaussian_ratio_moments, ratio_expectation, solve_sigma0, Sigma0};
