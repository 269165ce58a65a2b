//! Pearson χ² statistic, its mean under a deviated distribution, and the
//! sample size at which a deviation becomes visible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of standard deviations above the null mean.
pub const DEFAULT_C: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chi2Report {
    pub statistic: f64,
    pub bins: usize,
    pub trials: u64,
    pub dof: usize,
    /// Mean of the statistic under the null, `k - 1`.
    pub expected_mean: f64,
    /// `(k - 1) + c·sqrt(2k)`.
    pub threshold: f64,
    pub c: f64,
    pub verdict: Verdict,
}

/// `(k - 1) + c·sqrt(2k)`.
pub fn threshold(k: usize, c: f64) -> f64 {
    (k as f64 - 1.0) + c * (2.0 * k as f64).sqrt()
}

/// `T = Σ (z_i - N p_i)^2 / (N p_i)`, judged against [`threshold`].
pub fn chi2_statistic(counts: &[u64], p: &[f64], trials: u64, c: f64) -> Result<Chi2Report> {
    if counts.len() != p.len() {
        return Err(Error::LengthMismatch(p.len(), counts.len()));
    }
    let actual: u64 = counts.iter().sum();
    if actual != trials {
        return Err(Error::TrialMismatch {
            expected: trials,
            actual,
        });
    }
    let n = trials as f64;
    let mut t = 0.0;
    for (bin, (&z, &pi)) in counts.iter().zip(p).enumerate() {
        let e = n * pi;
        if e.is_nan() || e < 5.0 {
            return Err(Error::EmptyBin { bin, expected: e });
        }
        let d = z as f64 - e;
        t += d * d / e;
    }
    let k = counts.len();
    let limit = threshold(k, c);
    Ok(Chi2Report {
        statistic: t,
        bins: k,
        trials,
        dof: k - 1,
        expected_mean: k as f64 - 1.0,
        threshold: limit,
        c,
        verdict: if t > limit {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
    })
}

/// `E[T] = (k - 1) + (N - 1) Σ p_i eps_i^2 + Σ eps_i` for counts drawn from
/// `q_i = p_i (1 + eps_i)`.
pub fn expected_chi2(p: &[f64], eps: &[f64], trials: u64) -> Result<f64> {
    if p.len() != eps.len() {
        return Err(Error::LengthMismatch(p.len(), eps.len()));
    }
    let total: f64 = p.iter().zip(eps).map(|(p, e)| p * (1.0 + e)).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(total));
    }
    let k = p.len() as f64;
    Ok((k - 1.0) + (trials as f64 - 1.0) * weight(p, eps) + eps.iter().sum::<f64>())
}

fn weight(p: &[f64], eps: &[f64]) -> f64 {
    p.iter().zip(eps).map(|(p, e)| p * e * e).sum()
}

/// `ceil(sqrt(2k) / Σ p_i eps_i^2)` with `k = p.len()`: the sample size at
/// which the mean excess of the statistic reaches one null standard
/// deviation.
pub fn detection_sample_size(p: &[f64], eps: &[f64]) -> Result<u64> {
    if p.len() != eps.len() {
        return Err(Error::LengthMismatch(p.len(), eps.len()));
    }
    let w = weight(p, eps);
    if w <= 0.0 {
        return Err(Error::NoDeviations);
    }
    Ok(((2.0 * p.len() as f64).sqrt() / w).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::SplitMix64;

    fn multinomial(rng: &mut SplitMix64, q: &[f64], n: u64) -> Vec<u64> {
        let cdf: Vec<f64> = q
            .iter()
            .scan(0.0, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect();
        let mut counts = vec![0u64; q.len()];
        for _ in 0..n {
            let u = rng.next_f64() * cdf[q.len() - 1];
            let i = cdf.partition_point(|&c| c <= u).min(q.len() - 1);
            counts[i] += 1;
        }
        counts
    }

    #[test]
    fn exact_fit_is_zero() {
        let r = chi2_statistic(&[25, 25, 50], &[0.25, 0.25, 0.5], 100, DEFAULT_C).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.dof, 2);
    }

    #[test]
    fn hand_computed_two_bins() {
        let r = chi2_statistic(&[60, 40], &[0.5, 0.5], 100, DEFAULT_C).unwrap();
        assert!((r.statistic - 4.0).abs() < 1e-12);
        assert!((r.threshold - (1.0 + 3.0 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            chi2_statistic(&[1, 3], &[0.5, 0.5], 4, DEFAULT_C),
            Err(Error::EmptyBin { bin: 0, .. })
        ));
        assert!(matches!(
            chi2_statistic(&[60, 40], &[0.5, 0.5], 99, DEFAULT_C),
            Err(Error::TrialMismatch { .. })
        ));
        assert!(expected_chi2(&[0.5, 0.5], &[0.1, 0.1], 10).is_err());
        assert_eq!(
            detection_sample_size(&[0.5, 0.5], &[0.0, 0.0]),
            Err(Error::NoDeviations)
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(expected_chi2(&[0.25; 4], &[0.0; 4], 1000).unwrap(), 3.0);
        assert_eq!(
            detection_sample_size(&[0.5, 0.5], &[0.1, -0.1]).unwrap(),
            200
        );
    }

    #[test]
    fn flaw_one_scale() {
        // one of 128 uniform bins off by 2^-25 in relative terms
        let k = 128;
        let p = vec![1.0 / k as f64; k];
        let mut eps = vec![0.0; k];
        eps[0] = 2f64.powi(-25);
        eps[1] = -2f64.powi(-25);
        // O(1/eps^2) = 2^50, times the 2k·sqrt(2k)/2 constant
        assert_eq!(detection_sample_size(&p, &eps).unwrap(), 1u64 << 60);
    }

    #[test]
    fn monte_carlo_mean_matches_formula() {
        let p = [0.05, 0.10, 0.15, 0.20, 0.20, 0.15, 0.10, 0.05];
        let eps = [0.04, -0.02, 0.01, -0.015, 0.015, -0.01, 0.02, -0.04];
        let q: Vec<f64> = p.iter().zip(&eps).map(|(p, e)| p * (1.0 + e)).collect();
        let n = 100_000u64;
        let runs = 200;
        let mut rng = SplitMix64::new(0x5eed);
        let ts: Vec<f64> = (0..runs)
            .map(|_| {
                let c = multinomial(&mut rng, &q, n);
                chi2_statistic(&c, &p, n, DEFAULT_C).unwrap().statistic
            })
            .collect();
        let mean = ts.iter().sum::<f64>() / runs as f64;
        let var = ts.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
        let se = (var / runs as f64).sqrt();
        let want = expected_chi2(&p, &eps, n).unwrap();
        assert!(
            (mean - want).abs() < 3.0 * se,
            "mean {mean} vs {want} (se {se})"
        );
    }
}
