//! Empirical distributions and the distances used to compare standardized
//! SNR samples with the standard normal law.

pub mod divergence;
pub mod empirical;
pub mod ks;
pub mod normal;

pub use divergence::{
    f_divergence, f_divergence_between, f_divergence_binned, Divergence, DivergenceReport,
};
pub use empirical::{ecdf, BinRule, EmpiricalDistribution, Histogram};
pub use ks::{ks_statistic, two_sample_ks};
pub use normal::{standard_normal_cdf, standard_normal_pdf, Normal, Reference, StandardNormal};
