use crate::error::{Error, Result};

/// Sorted sample with its empirical CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidArgument("NaN in samples".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Right-continuous `#{x_i ≤ x} / n`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&v| v <= x) as f64 / self.samples.len() as f64
    }

    pub fn quantile(&self, p: f64) -> f64 {
        let pos = p.clamp(0.0, 1.0) * (self.samples.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        let frac = pos - lo as f64;
        self.samples[lo] * (1.0 - frac) + self.samples[hi] * frac
    }

    pub fn histogram(&self, rule: BinRule) -> Histogram {
        Histogram::from_sorted(&self.samples, rule)
    }
}

/// Step-function evaluator over a sample.
pub fn ecdf(samples: &[f64]) -> Result<impl Fn(f64) -> f64> {
    let dist = EmpiricalDistribution::new(samples.to_vec())?;
    Ok(move |x| dist.ecdf(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BinRule {
    /// Width `2 IQR / n^{1/3}`.
    #[default]
    FreedmanDiaconis,
    Fixed(usize),
}

impl BinRule {
    /// `0` selects Freedman–Diaconis.
    pub fn from_count(bins: usize) -> Self {
        if bins == 0 {
            BinRule::FreedmanDiaconis
        } else {
            BinRule::Fixed(bins)
        }
    }
}

const MAX_BINS: usize = 100_000;

/// Equal-width histogram density; `Σ density · width = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
}

impl Histogram {
    fn from_sorted(sorted: &[f64], rule: BinRule) -> Self {
        let n = sorted.len();
        let (lo, hi) = (sorted[0], sorted[n - 1]);
        if hi <= lo {
            return Histogram {
                edges: vec![lo - 0.5, lo + 0.5],
                densities: vec![1.0],
            };
        }
        let bins = match rule {
            BinRule::Fixed(b) => b.max(1),
            BinRule::FreedmanDiaconis => {
                let q = |p: f64| {
                    let pos = p * (n - 1) as f64;
                    let (a, b) = (pos.floor() as usize, pos.ceil() as usize);
                    sorted[a] + (sorted[b] - sorted[a]) * (pos - a as f64)
                };
                let width = 2.0 * (q(0.75) - q(0.25)) / (n as f64).cbrt();
                if width > 0.0 {
                    (((hi - lo) / width).ceil() as usize).clamp(1, MAX_BINS)
                } else {
                    (n as f64).sqrt().ceil() as usize
                }
            }
        };
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins)
            .map(|i| if i == bins { hi } else { lo + i as f64 * width })
            .collect();
        let mut counts = vec![0usize; bins];
        for &v in sorted {
            let idx = (((v - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        let densities = counts
            .iter()
            .zip(edges.windows(2))
            .map(|(&c, e)| c as f64 / (n as f64 * (e[1] - e[0])))
            .collect();
        Histogram { edges, densities }
    }

    pub fn bins(&self) -> usize {
        self.densities.len()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|e| e[1] - e[0]).collect()
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.densities
            .iter()
            .zip(self.widths())
            .map(|(d, w)| d * w)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn ecdf_examples() {
        let f = ecdf(&[3.0, 1.0, 2.0]).unwrap();
        assert!((f(2.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(f(0.0), 0.0);
        assert_eq!(f(10.0), 1.0);
        assert!(matches!(ecdf(&[]), Err(Error::EmptySamples)));
    }

    #[test]
    fn ecdf_of_normal_draws_at_zero() {
        let mut r = rng::stream(1);
        let xs: Vec<f64> = (0..100_000).map(|_| StandardNormal.sample(&mut r)).collect();
        let f = ecdf(&xs).unwrap();
        assert!((f(0.0) - 0.5).abs() < 0.01);
    }

    #[test]
    fn histogram_mass_is_one() {
        let mut r = rng::stream(2);
        let xs: Vec<f64> = (0..5000).map(|_| StandardNormal.sample(&mut r)).collect();
        let d = EmpiricalDistribution::new(xs).unwrap();
        for rule in [
            BinRule::Fixed(16),
            BinRule::Fixed(64),
            BinRule::Fixed(256),
            BinRule::FreedmanDiaconis,
        ] {
            let h = d.histogram(rule);
            assert!((h.total_mass() - 1.0).abs() < 1e-12, "{rule:?}");
            assert!(h.densities.iter().all(|&v| v >= 0.0));
        }
        let fd = d.histogram(BinRule::FreedmanDiaconis);
        assert!(fd.bins() > 16 && fd.bins() < 200, "{}", fd.bins());
    }

    #[test]
    fn degenerate_histogram() {
        let d = EmpiricalDistribution::new(vec![2.0; 5]).unwrap();
        let h = d.histogram(BinRule::FreedmanDiaconis);
        assert_eq!(h.bins(), 1);
        assert!((h.total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nan_rejected() {
        assert!(EmpiricalDistribution::new(vec![1.0, f64::NAN]).is_err());
    }
}
