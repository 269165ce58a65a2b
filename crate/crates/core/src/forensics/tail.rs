//! Exhaustive audit of the tail path under the SHR0 source.
//!
//! The tail is reached only when the first output has its low index bits all
//! zero and fails the fast path, so enumerating those outputs covers every
//! way of entering it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bins::BinCensus;
use super::normal::normal_bin_probs;
use super::{add_into, blocks, with_workers};
use crate::error::{Error, Result};
use crate::generators::{Shr0, ShrState};
use crate::ziggurat::ZigguratTable;

/// Upper edges of the tail bins after the first; the first edge is `r`.
pub const TAIL_EDGES: [f64; 7] = [3.75, 4.0, 4.25, 4.5, 4.75, 5.0, 5.5];

/// `r` rounded as it is usually printed, used for the reference column.
pub const NOMINAL_R: f64 = 3.44262;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailAudit {
    /// Nonzero outputs with the index bits zero.
    pub eligible: u64,
    /// Of those, how many fail the fast path and enter the tail.
    pub entering_count: u64,
    /// `|x|` of the resulting tail deviates, binned from `r` upward.
    pub census: BinCensus,
    /// Normal conditional tail probabilities over the nominal edges.
    pub analytic: Vec<f64>,
}

const BLOCK: u64 = 1 << 18;

/// Enumerate every nonzero SHR0 output with the low index bits zero, run the
/// sampler from there (later uniforms continue the same stream), and bin the
/// magnitudes of the deviates produced by the tail.
pub fn tail_audit_shr0(table: &ZigguratTable, workers: Option<usize>) -> Result<TailAudit> {
    let shift = table.k().trailing_zeros();
    let count = 1u64 << (32 - shift);
    let mut edges = vec![table.r()];
    edges.extend_from_slice(&TAIL_EDGES);
    if TAIL_EDGES[0] <= table.r() {
        return Err(Error::InvalidEdges);
    }
    let n = edges.len();
    let kn0 = i64::from(table.kn()[0]);
    let ranges = blocks(1, count, BLOCK);
    let tally = with_workers(workers, || {
        ranges
            .into_par_iter()
            .map(|(lo, hi)| {
                // last slot counts entries
                let mut h = vec![0u64; n + 1];
                for m in lo..hi {
                    let jsr = (m << shift) as u32;
                    let hz = jsr as i32;
                    if i64::from(hz).abs() < kn0 {
                        continue;
                    }
                    h[n] += 1;
                    let mut src = Shr0(ShrState::new(jsr).expect("nonzero by construction"));
                    let x = table.tail_sample(&mut src, hz > 0).abs();
                    let bin = BinCensus::bin_of(&edges, x).expect("tail deviates exceed r");
                    h[bin] += 1;
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
    let mut nominal = vec![NOMINAL_R];
    nominal.extend_from_slice(&TAIL_EDGES);
    Ok(TailAudit {
        eligible: count - 1,
        entering_count: tally[n],
        census: BinCensus::from_counts(edges, tally[..n].to_vec(), 0)?,
        analytic: normal_bin_probs(&nominal)?,
    })
}
