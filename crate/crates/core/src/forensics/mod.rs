//! Exhaustive censuses, χ² machinery and the specific audits that expose
//! each generator's flaw.
//!
//! Everything that enumerates a domain splits it into disjoint blocks with
//! private counters and merges by addition, so results never depend on the
//! number of workers.

pub mod bins;
pub mod census;
pub mod chi2;
pub mod experiment;
pub mod maps;
pub mod normal;
pub mod orbit;
pub mod seeds;
pub mod tail;

pub use bins::{first_output_bin_census, BinCensus, BinRow};
pub use census::{low_bits_census, low_bits_of, preimage_census, Domain, PreimageCensus};
pub use chi2::{chi2_statistic, detection_sample_size, expected_chi2, Chi2Report, Verdict};
pub use experiment::{normal_chi2_experiment, run_experiment, Curve, CurvePoint, ExperimentConfig};
pub use maps::{shr3_first_output_census, CensusMap};
pub use normal::normal_bin_probs;
pub use orbit::{mwc_orbit_census, mwc_orbit_pair, orbit_starts, OrbitStats};
pub use seeds::{related_seed_lowbits_check, xor_quadruple_demo, LowBitsReport, QuadrupleReport};
pub use tail::{tail_audit_shr0, TailAudit};

/// Run `f` on a dedicated pool of `workers` threads, or on the global pool
/// when `workers` is `None`.
pub fn with_workers<R, F>(workers: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("failed to build worker pool")
            .install(f),
        None => f(),
    }
}

/// Split `[lo, hi)` into consecutive blocks of at most `block` elements.
pub(crate) fn blocks(lo: u64, hi: u64, block: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = lo;
    while start < hi {
        let end = (start + block).min(hi);
        out.push((start, end));
        start = end;
    }
    out
}

pub(crate) fn add_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += *b;
    }
}
