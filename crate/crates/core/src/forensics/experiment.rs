//! Streaming χ² test of Ziggurat deviates against the normal distribution on
//! evenly spaced bins.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::chi2::{threshold, Chi2Report, Verdict, DEFAULT_C};
use super::normal::upper_tail;
use crate::error::{Error, Result};
use crate::generators::{Generator, Uniform32};
use crate::ziggurat::ZigguratTable;

/// Smallest expected count a merged bin may have.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub nbins: usize,
    pub lo: f64,
    pub hi: f64,
    /// Strictly increasing sample counts at which the statistic is reported.
    pub checkpoints: Vec<u64>,
    pub c: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            nbins: 200,
            lo: -7.0,
            hi: 7.0,
            checkpoints: geometric_checkpoints(20, 34),
            c: DEFAULT_C,
        }
    }
}

/// `2^lo, 2^(lo+2), ..., 2^hi`.
pub fn geometric_checkpoints(lo: u32, hi: u32) -> Vec<u64> {
    (lo..=hi).step_by(2).map(|e| 1u64 << e).collect()
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad_range = !self.lo.is_finite() || !self.hi.is_finite() || self.lo >= self.hi;
        if self.nbins < 2 || bad_range {
            return Err(Error::InvalidEdges);
        }
        if self.checkpoints.is_empty()
            || self.checkpoints.windows(2).any(|w| w[0] >= w[1])
            || self.checkpoints[0] == 0
        {
            return Err(Error::InvalidEdges);
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.nbins as f64
    }

    /// Bin of a deviate; values outside the range land in the end bins.
    #[inline]
    pub fn bin_of(&self, x: f64) -> usize {
        let b = ((x - self.lo) * self.nbins as f64 / (self.hi - self.lo)).floor();
        if b <= 0.0 {
            0
        } else {
            (b as usize).min(self.nbins - 1)
        }
    }

    /// Normal probabilities of each bin, the end bins absorbing the tails.
    pub fn probabilities(&self) -> Vec<f64> {
        let w = self.width();
        // Pr{Z >= e}, evaluated on the tail that avoids cancellation
        let above = |e: f64| {
            if e >= 0.0 {
                upper_tail(e)
            } else {
                1.0 - upper_tail(-e)
            }
        };
        let below = |e: f64| {
            if e <= 0.0 {
                upper_tail(-e)
            } else {
                1.0 - upper_tail(e)
            }
        };
        (0..self.nbins)
            .map(|j| {
                let a = self.lo + j as f64 * w;
                let b = if j + 1 == self.nbins { self.hi } else { a + w };
                match (j == 0, j + 1 == self.nbins) {
                    (true, _) => below(b),
                    (_, true) => above(a),
                    _ if a >= 0.0 => upper_tail(a) - upper_tail(b),
                    _ if b <= 0.0 => upper_tail(-b) - upper_tail(-a),
                    _ => 1.0 - upper_tail(-a) - upper_tail(b),
                }
            })
            .collect()
    }
}

/// Merge adjacent bins so every group expects at least `min` hits.
///
/// Each half is swept from its outer end toward the middle, closing a group
/// as soon as it reaches `min`; an unfinished group at the middle joins the
/// last closed group of its half. If a whole half falls short, the two
/// middle groups are joined. Returns half-open index ranges in order.
pub fn merge_plan(expected: &[f64], min: f64) -> Result<Vec<(usize, usize)>> {
    fn sweep(
        order: impl Iterator<Item = usize>,
        expected: &[f64],
        min: f64,
    ) -> Vec<(Vec<usize>, f64)> {
        let mut groups: Vec<(Vec<usize>, f64)> = Vec::new();
        let mut cur = (Vec::new(), 0.0);
        for i in order {
            cur.0.push(i);
            cur.1 += expected[i];
            if cur.1 >= min {
                groups.push(std::mem::take(&mut cur));
            }
        }
        if !cur.0.is_empty() {
            match groups.last_mut() {
                Some(last) => {
                    last.0.extend(cur.0);
                    last.1 += cur.1;
                }
                None => groups.push(cur),
            }
        }
        groups
    }
    let n = expected.len();
    let mid = n / 2;
    let left = sweep(0..mid, expected, min);
    let mut right = sweep((mid..n).rev(), expected, min);
    right.reverse();
    let mut all: Vec<(Vec<usize>, f64)> = left.into_iter().chain(right).collect();
    let l = all
        .iter()
        .position(|g| g.0.contains(&(mid.max(1) - 1)))
        .unwrap_or(0);
    if all.len() > 1 && (all[l].1 < min || all[l + 1].1 < min) {
        let next = all.remove(l + 1);
        all[l].0.extend(next.0);
        all[l].1 += next.1;
    }
    if let Some((bin, g)) = all.iter().enumerate().find(|(_, g)| g.1 < min) {
        return Err(Error::EmptyBin { bin, expected: g.1 });
    }
    Ok(all
        .into_iter()
        .map(|(idx, _)| (*idx.iter().min().unwrap(), idx.iter().max().unwrap() + 1))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: u64,
    pub statistic: f64,
    /// Bins remaining after merging, `k'`.
    pub bins: usize,
    pub threshold: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub variant: String,
    pub config: ExperimentConfig,
    pub points: Vec<CurvePoint>,
}

impl Curve {
    /// `N,T,threshold` rows after `#` comment lines describing the run.
    pub fn to_csv(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        writeln!(out, "# variant={}", self.variant).unwrap();
        writeln!(
            out,
            "# bins={}, range=[{},{}], c={}",
            c.nbins, c.lo, c.hi, c.c
        )
        .unwrap();
        out.push_str("N,T,threshold\n");
        for p in &self.points {
            writeln!(out, "{},{},{}", p.n, p.statistic, p.threshold).unwrap();
        }
        out
    }

    /// First checkpoint at which the statistic exceeds its threshold.
    pub fn first_failure(&self) -> Option<u64> {
        self.points
            .iter()
            .find(|p| p.verdict == Verdict::Fail)
            .map(|p| p.n)
    }
}

/// χ² of `counts` against `p` after merging low-expectation bins.
pub fn merged_chi2(counts: &[u64], p: &[f64], n: u64, c: f64) -> Result<Chi2Report> {
    let expected: Vec<f64> = p.iter().map(|p| p * n as f64).collect();
    let plan = merge_plan(&expected, MIN_EXPECTED)?;
    let mc: Vec<u64> = plan
        .iter()
        .map(|&(a, b)| counts[a..b].iter().sum())
        .collect();
    let mp: Vec<f64> = plan.iter().map(|&(a, b)| p[a..b].iter().sum()).collect();
    super::chi2::chi2_statistic(&mc, &mp, n, c)
}

/// Stream deviates from `table` over `source`, reporting χ² at every
/// checkpoint.
pub fn normal_chi2_experiment<S: Uniform32>(
    table: &ZigguratTable,
    mut source: S,
    variant: &str,
    config: &ExperimentConfig,
    mut progress: impl FnMut(&CurvePoint),
) -> Result<Curve> {
    config.validate()?;
    let p = config.probabilities();
    let mut counts = vec![0u64; config.nbins];
    let mut drawn = 0u64;
    let mut points = Vec::with_capacity(config.checkpoints.len());
    for &cp in &config.checkpoints {
        while drawn < cp {
            let x = table.rnor(&mut source);
            counts[config.bin_of(x)] += 1;
            drawn += 1;
        }
        let r = merged_chi2(&counts, &p, drawn, config.c)?;
        let point = CurvePoint {
            n: drawn,
            statistic: r.statistic,
            bins: r.bins,
            threshold: threshold(r.bins, config.c),
            verdict: r.verdict,
        };
        progress(&point);
        points.push(point);
    }
    Ok(Curve {
        variant: variant.to_string(),
        config: config.clone(),
        points,
    })
}

/// [`normal_chi2_experiment`] with the source monomorphized per variant.
pub fn run_experiment(
    table: &ZigguratTable,
    generator: Generator,
    config: &ExperimentConfig,
    progress: impl FnMut(&CurvePoint),
) -> Result<Curve> {
    let name = generator.name();
    match generator {
        Generator::Shr3(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::Shr0(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::Cong(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::Mwc32(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::CngPlusShr0(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::ShrCongXPlusTx(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::KissXPlusTx(g) => normal_chi2_experiment(table, g, name, config, progress),
        Generator::Ideal(g) => normal_chi2_experiment(table, g, name, config, progress),
    }
}
