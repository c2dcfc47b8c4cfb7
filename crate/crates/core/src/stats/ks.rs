use super::empirical::EmpiricalDistribution;

/// `sup_x |F̄(x) − F(x)|` against a continuous CDF, from the order
/// statistics: `max_i max(i/n − F(x_(i)), F(x_(i)) − (i−1)/n)`.
pub fn ks_statistic(emp: &EmpiricalDistribution, cdf: impl Fn(f64) -> f64) -> f64 {
    let n = emp.len() as f64;
    emp.samples()
        .iter()
        .enumerate()
        .fold(0.0_f64, |d, (i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            d.max(above).max(below)
        })
        .clamp(0.0, 1.0)
}

/// `sup_x |F̄_a(x) − F̄_b(x)|` over the merged sample grid.
pub fn two_sample_ks(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (xa, xb) = (a.samples(), b.samples());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0_f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::stats::normal::standard_normal_cdf;
    use rand_distr::{Distribution, StandardNormal};

    fn normal_draws(n: usize, seed: u64, shift: f64) -> EmpiricalDistribution {
        let mut r = rng::stream(seed);
        EmpiricalDistribution::new(
            (0..n)
                .map(|_| { let z: f64 = StandardNormal.sample(&mut r); shift + z })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_sample_against_normal() {
        let e = EmpiricalDistribution::new(vec![0.0]).unwrap();
        assert!((ks_statistic(&e, standard_normal_cdf) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn same_law_is_small() {
        let e = normal_draws(100_000, 3, 0.0);
        assert!(ks_statistic(&e, standard_normal_cdf) < 0.01);
    }

    #[test]
    fn shifted_law_matches_analytic_distance() {
        // sup |Φ(x) − Φ(x − 1)| = 2Φ(0.5) − 1, attained at x = 0.5
        let e = normal_draws(100_000, 4, 0.0);
        let d = ks_statistic(&e, |x| standard_normal_cdf(x - 1.0));
        let exact = 2.0 * standard_normal_cdf(0.5) - 1.0;
        assert!((exact - 0.382_924_922_548_026).abs() < 1e-12);
        assert!((d - exact).abs() < 0.02, "{d}");
    }

    #[test]
    fn two_sample_examples() {
        let a = normal_draws(1000, 5, 0.0);
        assert_eq!(two_sample_ks(&a, &a), 0.0);
        let z = EmpiricalDistribution::new(vec![0.0]).unwrap();
        let o = EmpiricalDistribution::new(vec![1.0]).unwrap();
        assert_eq!(two_sample_ks(&z, &o), 1.0);
        assert_eq!(two_sample_ks(&o, &z), 1.0);
        let b = normal_draws(100_000, 6, 0.0);
        let c = normal_draws(100_000, 7, 0.0);
        let d = two_sample_ks(&b, &c);
        assert!(d < 0.015, "{d}");
        assert_eq!(d, two_sample_ks(&c, &b));
    }

    #[test]
    fn two_sample_with_ties() {
        let a = EmpiricalDistribution::new(vec![1.0, 1.0, 2.0]).unwrap();
        let b = EmpiricalDistribution::new(vec![1.0, 2.0, 2.0]).unwrap();
        assert!((two_sample_ks(&a, &b) - 1.0 / 3.0).abs() < 1e-15);
    }
}
