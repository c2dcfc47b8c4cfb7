//! Robust Tyler-type covariance estimation feeding an MVDR beamformer, with
//! the deterministic equivalents and CLT standardizations of its output SNR
//! and a Monte Carlo harness that compares both regimes against `N(0, 1)`.

pub mod asymptotics;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod mvdr;
pub mod quadrature;
pub mod rng;
pub mod rte;
pub mod scenario;
pub mod stats;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use mvdr::{beamform, mvdr_weights, oracle_snr, output_snr, BeamformerOutput};
pub use rte::{rte_residual, solve_rte, RteEstimate, RteOptions};
pub use scenario::{
    build_covariance, sample_snapshots, steering_vector, Interferer, Scenario, ScenarioConfig,
    SnapshotBatch, SnapshotSampler, TextureLaw,
};
