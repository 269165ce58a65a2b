//! Censuses of sampler outputs over bins of `|x|`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::normal::normal_bin_probs;
use super::{add_into, blocks, with_workers};
use crate::error::{Error, Result};
use crate::generators::Uniform32;
use crate::ziggurat::ZigguratTable;

/// Hit counts of `|x|` over bins `[e_j, e_{j+1})`, the last bin open, with
/// the normal reference probabilities and relative deviations
/// `eps = (q - p) / p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinCensus {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Values below the first edge.
    pub below: u64,
    pub trials: u64,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub eps: Vec<f64>,
}

/// One bin of a census, for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinRow {
    /// 1-based bin number (`[x_{i-1}, x_i]` for Ziggurat strip edges).
    pub interval: usize,
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    pub p: f64,
    pub q: f64,
    pub eps: f64,
    /// `p * eps^2`, the bin's contribution to χ² drift per sample.
    pub weight: f64,
}

impl BinCensus {
    /// `trials` counts every observation including those below the range.
    pub fn from_counts(edges: Vec<f64>, counts: Vec<u64>, below: u64) -> Result<Self> {
        let p = normal_bin_probs(&edges)?;
        if p.len() != counts.len() {
            return Err(Error::LengthMismatch(p.len(), counts.len()));
        }
        let binned: u64 = counts.iter().sum();
        let q: Vec<f64> = counts.iter().map(|&c| c as f64 / binned as f64).collect();
        let eps = q.iter().zip(&p).map(|(q, p)| (q - p) / p).collect();
        Ok(Self {
            edges,
            counts,
            below,
            trials: binned + below,
            p,
            q,
            eps,
        })
    }

    /// Bin index of a magnitude, `None` below the first edge.
    #[inline]
    pub fn bin_of(edges: &[f64], v: f64) -> Option<usize> {
        edges.partition_point(|&e| e <= v).checked_sub(1)
    }

    pub fn rows(&self) -> Vec<BinRow> {
        (0..self.counts.len())
            .map(|i| BinRow {
                interval: i + 1,
                lo: self.edges[i],
                hi: self.edges.get(i + 1).copied().unwrap_or(f64::INFINITY),
                count: self.counts[i],
                p: self.p[i],
                q: self.q[i],
                eps: self.eps[i],
                weight: self.p[i] * self.eps[i] * self.eps[i],
            })
            .collect()
    }

    /// Rows ordered by decreasing `p * eps^2`.
    pub fn rows_by_weight(&self) -> Vec<BinRow> {
        let mut rows = self.rows();
        rows.sort_by(|a, b| b.weight.total_cmp(&a.weight));
        rows
    }

    /// `Σ p eps^2`.
    pub fn weight_sum(&self) -> f64 {
        self.p.iter().zip(&self.eps).map(|(p, e)| p * e * e).sum()
    }
}

const SEED_BLOCK: u64 = 1 << 20;

/// For every seed in `seeds`, build a source with `make_source`, draw the
/// first deviate from `table`, and bin its magnitude by `edges`.
pub fn first_output_bin_census<S, F>(
    table: &ZigguratTable,
    seeds: std::ops::Range<u64>,
    make_source: F,
    edges: &[f64],
    workers: Option<usize>,
) -> Result<BinCensus>
where
    S: Uniform32,
    F: Fn(u64) -> S + Sync,
{
    if edges.is_empty() || edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidEdges);
    }
    let n = edges.len();
    let ranges = blocks(seeds.start, seeds.end, SEED_BLOCK);
    // slot n holds values below the first edge
    let tally = with_workers(workers, || {
        ranges
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut h = vec![0u64; n + 1];
                for seed in lo..hi {
                    let mut src = make_source(seed);
                    let x = table.rnor(&mut src).abs();
                    match BinCensus::bin_of(edges, x) {
                        Some(i) => h[i] += 1,
                        None => h[n] += 1,
                    }
                }
                h
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    add_into(&mut a, &b);
                    a
                },
            )
    });
    let below = tally[n];
    BinCensus::from_counts(edges.to_vec(), tally[..n].to_vec(), below)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::SplitMix64;

    #[test]
    fn bin_lookup() {
        let e = [0.0, 1.0, 2.0];
        assert_eq!(BinCensus::bin_of(&e, 0.0), Some(0));
        assert_eq!(BinCensus::bin_of(&e, 0.99), Some(0));
        assert_eq!(BinCensus::bin_of(&e, 1.0), Some(1));
        assert_eq!(BinCensus::bin_of(&e, 7.0), Some(2));
        assert_eq!(BinCensus::bin_of(&[1.0], 0.5), None);
    }

    #[test]
    fn ideal_source_within_binomial_error() {
        let t = ZigguratTable::build(128).unwrap();
        let n = 4_000_000u64;
        let census = first_output_bin_census(
            &t,
            0..n,
            |s| SplitMix64::new(s.wrapping_mul(0x2545_f491_4f6c_dd1d)),
            t.x(),
            Some(2),
        )
        .unwrap();
        assert_eq!(census.trials, n);
        assert_eq!(census.below, 0);
        assert!((census.p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for i in 0..128 {
            let p = census.p[i];
            let sd = (p * (1.0 - p) / n as f64).sqrt();
            assert!(
                (census.q[i] - p).abs() < 5.0 * sd,
                "bin {i}: q={} p={p}",
                census.q[i]
            );
        }
    }

    #[test]
    fn rows_and_weights() {
        let c = BinCensus::from_counts(vec![0.0, 1.0], vec![70, 30], 0).unwrap();
        let rows = c.rows_by_weight();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].weight >= rows[1].weight);
        assert!((c.weight_sum() - rows.iter().map(|r| r.weight).sum::<f64>()).abs() < 1e-15);
        assert_eq!(c.rows()[1].hi, f64::INFINITY);
    }
}
