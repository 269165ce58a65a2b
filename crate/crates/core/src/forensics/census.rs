//! Preimage and low-bit censuses over full 2^w domains.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{add_into, blocks, with_workers};
use crate::error::{Error, Result};

/// Input domain of a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Every `w`-bit word.
    Full,
    /// Every nonzero word; the shift register never holds zero.
    NonZero,
}

impl Domain {
    fn start(self) -> u64 {
        match self {
            Domain::Full => 0,
            Domain::NonZero => 1,
        }
    }

    pub fn size(self, bits: u32) -> u64 {
        (1u64 << bits) - self.start()
    }
}

/// Histogram of preimage multiplicities: `counts[m]` outputs have exactly
/// `m` preimages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageCensus {
    pub bits: u32,
    pub domain_size: u64,
    pub counts: Vec<u64>,
}

impl PreimageCensus {
    fn empty(bits: u32, domain_size: u64) -> Self {
        Self {
            bits,
            domain_size,
            counts: vec![0; 256],
        }
    }

    /// Number of outputs with exactly `m` preimages.
    pub fn count(&self, m: usize) -> u64 {
        self.counts.get(m).copied().unwrap_or(0)
    }

    pub fn codomain_size(&self) -> u64 {
        1u64 << self.bits
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    /// Nonzero entries keyed by multiplicity.
    pub fn to_map(&self) -> BTreeMap<u32, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(m, &c)| (m as u32, c))
            .collect()
    }

    /// Σ count = codomain size and Σ m·count = domain size.
    pub fn is_conserved(&self) -> bool {
        let outputs: u64 = self.counts.iter().sum();
        let inputs: u64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(m, &c)| m as u64 * c)
            .sum();
        outputs == self.codomain_size() && inputs == self.domain_size
    }

    fn absorb(&mut self, partial: &[u64]) {
        add_into(&mut self.counts, partial);
    }

    pub fn trimmed(mut self) -> Self {
        self.counts.truncate(self.max_multiplicity() + 1);
        self
    }
}

fn validate(bits: u32, chunks: u32) -> Result<()> {
    if bits == 0 || bits > 32 {
        return Err(Error::InvalidWidth(bits));
    }
    if !chunks.is_power_of_two() || chunks > 256 || u64::from(chunks) > (1u64 << bits) {
        return Err(Error::InvalidChunks { chunks, bits });
    }
    Ok(())
}

/// One pass of the census: tally outputs falling in output chunk `chunk` of
/// `chunks`, then histogram the per-output counters. Returns counts by
/// multiplicity (length 256).
///
/// Uses one byte per output in the chunk; reaching 255 is an error.
pub fn census_chunk<F>(
    map: &F,
    bits: u32,
    domain: Domain,
    chunks: u32,
    chunk: u32,
) -> Result<Vec<u64>>
where
    F: Fn(u32) -> u32,
{
    validate(bits, chunks)?;
    let shift = bits - chunks.trailing_zeros();
    let mask = ((1u64 << bits) - 1) as u32;
    let low_mask = ((1u64 << shift) - 1) as u32;
    let mut counters = vec![0u8; 1usize << shift];
    let lo = domain.start() as u32;
    let hi = mask;
    let want = u64::from(chunk);
    for x in lo..=hi {
        let y = map(x) & mask;
        if u64::from(y) >> shift == want {
            let c = &mut counters[(y & low_mask) as usize];
            *c += 1;
            if *c == u8::MAX {
                return Err(Error::CounterSaturation { output: y });
            }
        }
    }
    let mut hist = vec![0u64; 256];
    for &c in &counters {
        hist[c as usize] += 1;
    }
    Ok(hist)
}

/// Count, for every output of `map` on the `bits`-wide domain, how many
/// inputs reach it, and histogram those multiplicities.
///
/// The output space is processed in `chunks` passes over the whole input
/// domain; passes run on separate workers with private counters.
pub fn preimage_census<F>(
    map: F,
    bits: u32,
    domain: Domain,
    chunks: u32,
    workers: Option<usize>,
) -> Result<PreimageCensus>
where
    F: Fn(u32) -> u32 + Sync,
{
    validate(bits, chunks)?;
    let partials: Vec<Result<Vec<u64>>> = with_workers(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| census_chunk(&map, bits, domain, chunks, c))
            .collect()
    });
    let mut census = PreimageCensus::empty(bits, domain.size(bits));
    for p in partials {
        census.absorb(&p?);
    }
    Ok(census.trimmed())
}

/// Assemble a census from per-chunk histograms produced by [`census_chunk`].
pub fn census_from_chunks<'a, I>(bits: u32, domain: Domain, chunks: I) -> PreimageCensus
where
    I: IntoIterator<Item = &'a Vec<u64>>,
{
    let mut census = PreimageCensus::empty(bits, domain.size(bits));
    for c in chunks {
        census.absorb(c);
    }
    census.trimmed()
}

const LOW_BITS_BLOCK: u64 = 1 << 22;

/// Histogram of the low `nbits` bits of `map(x)` over the 32-bit domain.
pub fn low_bits_census<F>(map: F, domain: Domain, nbits: u32, workers: Option<usize>) -> Vec<u64>
where
    F: Fn(u32) -> u32 + Sync,
{
    assert!((1..=16).contains(&nbits), "nbits must be in 1..=16");
    let mask = (1u32 << nbits) - 1;
    let ranges = blocks(domain.start(), 1u64 << 32, LOW_BITS_BLOCK);
    with_workers(workers, || {
        ranges
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut h = vec![0u64; 1 << nbits];
                for x in lo..hi {
                    h[(map(x as u32) & mask) as usize] += 1;
                }
                h
            })
            .reduce(
                || vec![0u64; 1 << nbits],
                |mut a, b| {
                    add_into(&mut a, &b);
                    a
                },
            )
    })
}

/// Histogram of the low `nbits` bits of a word sequence.
pub fn low_bits_of<I: IntoIterator<Item = u32>>(values: I, nbits: u32) -> Vec<u64> {
    let mask = (1u32 << nbits) - 1;
    let mut h = vec![0u64; 1 << nbits];
    for v in values {
        h[(v & mask) as usize] += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::shift_triple;

    /// 24-bit analog of `x + T(x)` with the same shift pattern scaled down.
    fn small_xtx(x: u32) -> u32 {
        let m = (1u32 << 24) - 1;
        let mut t = x;
        t ^= (t << 9) & m;
        t ^= t >> 13;
        t ^= (t << 4) & m;
        (x + t) & m
    }

    /// Independent oracle: a full `u32` counter array.
    fn brute(bits: u32, domain: Domain, map: impl Fn(u32) -> u32) -> Vec<u64> {
        let mask = ((1u64 << bits) - 1) as u32;
        let mut c = vec![0u32; 1 << bits];
        for x in domain.start() as u32..=mask {
            c[(map(x) & mask) as usize] += 1;
        }
        let mut h = vec![0u64; 1 + *c.iter().max().unwrap() as usize];
        for v in c {
            h[v as usize] += 1;
        }
        h
    }

    #[test]
    fn identity_and_doubling_small() {
        let c = preimage_census(|x| x, 20, Domain::Full, 4, Some(2)).unwrap();
        assert_eq!(c.to_map(), BTreeMap::from([(1, 1 << 20)]));
        let c = preimage_census(|x| x.wrapping_mul(2), 20, Domain::Full, 1, None).unwrap();
        assert_eq!(c.to_map(), BTreeMap::from([(0, 1 << 19), (2, 1 << 19)]));
        assert!(c.is_conserved());
    }

    #[test]
    fn matches_brute_force_and_is_chunk_independent() {
        let oracle = brute(24, Domain::NonZero, small_xtx);
        let one = preimage_census(small_xtx, 24, Domain::NonZero, 1, Some(1)).unwrap();
        let sixteen = preimage_census(small_xtx, 24, Domain::NonZero, 16, Some(3)).unwrap();
        assert_eq!(one.counts, oracle);
        assert_eq!(one, sixteen);
        assert!(one.is_conserved());
        assert_eq!(one.domain_size, (1 << 24) - 1);
        assert!(one.count(0) > 0, "contractive analog should miss outputs");
    }

    #[test]
    fn worker_count_does_not_matter() {
        let f = |x: u32| shift_triple(x, 3, 5, 7).wrapping_add(x) & 0x3f_ffff;
        let a = preimage_census(f, 22, Domain::Full, 8, Some(1)).unwrap();
        let b = preimage_census(f, 22, Domain::Full, 8, Some(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn saturation_is_reported() {
        let err = preimage_census(|_| 7, 16, Domain::Full, 1, None).unwrap_err();
        assert_eq!(err, Error::CounterSaturation { output: 7 });
    }

    #[test]
    fn chunk_validation() {
        assert!(preimage_census(|x| x, 16, Domain::Full, 3, None).is_err());
        assert!(preimage_census(|x| x, 16, Domain::Full, 512, None).is_err());
        assert!(preimage_census(|x| x, 33, Domain::Full, 1, None).is_err());
        assert!(preimage_census(|x| x, 4, Domain::Full, 32, None).is_err());
    }

    #[test]
    fn chunks_assemble() {
        let parts: Vec<Vec<u64>> = (0..4)
            .map(|c| census_chunk(&small_xtx, 24, Domain::NonZero, 4, c).unwrap())
            .collect();
        let whole = preimage_census(small_xtx, 24, Domain::NonZero, 4, None).unwrap();
        assert_eq!(census_from_chunks(24, Domain::NonZero, &parts), whole);
    }

    #[test]
    fn low_bits_helpers() {
        assert_eq!(low_bits_of([0u32, 1, 2, 3, 4, 0xff], 2), vec![2, 1, 1, 2]);
    }
}
