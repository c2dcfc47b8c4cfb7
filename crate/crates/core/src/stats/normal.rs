use std::f64::consts::{FRAC_1_SQRT_2, PI};

use statrs::function::erf::erfc;

/// `Φ(x) = 1 − Q(x) = ½ erfc(−x/√2)`.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

pub fn standard_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// A continuous reference law with density and distribution function.
pub trait Reference {
    fn pdf(&self, x: f64) -> f64;
    fn cdf(&self, x: f64) -> f64;
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StandardNormal;

impl Reference for StandardNormal {
    fn pdf(&self, x: f64) -> f64 {
        standard_normal_pdf(x)
    }
    fn cdf(&self, x: f64) -> f64 {
        standard_normal_cdf(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal {
    pub mean: f64,
    pub sd: f64,
}

impl Reference for Normal {
    fn pdf(&self, x: f64) -> f64 {
        standard_normal_pdf((x - self.mean) / self.sd) / self.sd
    }
    fn cdf(&self, x: f64) -> f64 {
        standard_normal_cdf((x - self.mean) / self.sd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(standard_normal_cdf(0.0), 0.5);
        assert!((standard_normal_pdf(0.0) - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert!((standard_normal_cdf(1.96) - 0.975_002_104_851_779_5).abs() < 1e-10);
        assert!((standard_normal_cdf(-1.0) - 0.158_655_253_931_457_05).abs() < 1e-10);
        assert!(standard_normal_cdf(-40.0) >= 0.0);
        let n = Normal { mean: 1.0, sd: 2.0 };
        assert_eq!(n.cdf(1.0), 0.5);
        assert!((n.pdf(1.0) - 0.5 * standard_normal_pdf(0.0)).abs() < 1e-16);
    }
}
