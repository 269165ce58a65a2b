//! Standard normal probabilities via the complementary error function.

use crate::error::{Error, Result};

/// `Pr{Z > x}`, accurate in relative terms far into the upper tail.
pub fn upper_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// `Pr{a < Z < b}` for `a <= b`, each side evaluated on the tail that avoids
/// cancellation.
pub fn interval_prob(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        upper_tail(a) - upper_tail(b)
    } else if b <= 0.0 {
        upper_tail(-b) - upper_tail(-a)
    } else {
        1.0 - upper_tail(-a) - upper_tail(b)
    }
}

/// Probabilities of `|Z|` landing in each bin `[e_j, e_{j+1})`, conditional
/// on `|Z| >= e_0`. The last bin is `[e_{n-1}, ∞)` unless the final edge is
/// itself `+∞`.
pub fn normal_bin_probs(edges: &[f64]) -> Result<Vec<f64>> {
    if edges.is_empty()
        || edges[0] < 0.0
        || edges.iter().any(|e| e.is_nan())
        || edges.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidEdges);
    }
    let mut uppers: Vec<f64> = edges.iter().map(|&e| upper_tail(e)).collect();
    if edges.last() != Some(&f64::INFINITY) {
        uppers.push(0.0);
    }
    let norm = uppers[0];
    Ok(uppers.windows(2).map(|w| (w[0] - w[1]) / norm).collect())
}
