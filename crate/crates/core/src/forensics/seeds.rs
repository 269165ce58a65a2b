//! Correlations between streams started from related seeds.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{seed, shr_transform, CngShr0, SeedSpec, SplitMix64, Uniform32};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowBitsReport {
    pub i: u32,
    pub j: u32,
    pub delta: u32,
    pub bits: u32,
    pub steps: u64,
    /// Steps whose outputs differ in the low `bits` bits.
    pub violations: u64,
    /// 1-based step of the first violation.
    pub first_violation: Option<u64>,
}

/// Low bits compared by [`related_seed_lowbits_check`]; the index mask of the
/// 64-strip sampler.
pub const LOW_BITS: u32 = 6;

/// Run the streams seeded `[i j]` and `[i j+delta]` side by side and compare
/// the low six bits of every pair of outputs.
pub fn related_seed_lowbits_check(i: u32, j: u32, delta: u32, steps: u64) -> Result<LowBitsReport> {
    let mut a = CngShr0::from_seed(SeedSpec::Vector(i, j))?;
    let mut b = CngShr0::from_seed(SeedSpec::Vector(i, j.wrapping_add(delta)))?;
    let mask = (1u32 << LOW_BITS) - 1;
    let mut violations = 0;
    let mut first_violation = None;
    for t in 1..=steps {
        if (a.next_u32() ^ b.next_u32()) & mask != 0 {
            violations += 1;
            first_violation.get_or_insert(t);
        }
    }
    Ok(LowBitsReport {
        i,
        j,
        delta,
        bits: LOW_BITS,
        steps,
        violations,
        first_violation,
    })
}

/// Four seeds with `v_a ^ v_b = v_c ^ v_d = alpha`, and what that does to
/// the first outputs of the streams they seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quadruple {
    pub seeds: [u32; 4],
    pub alpha: u32,
    /// `T^t(v_a) ^ T^t(v_b) = T^t(v_c) ^ T^t(v_d) = T^t(alpha)` for every step.
    pub linear: bool,
    /// Steps where the top bit of `T^t(alpha)` is zero ...
    pub msb_zero_steps: u64,
    /// ... and, among those, where `x^a` and `x^b` share their sign bit.
    pub sign_agreements: u64,
    /// Steps where the low 7 bits of `T^t(alpha)` are zero ...
    pub low7_zero_steps: u64,
    /// ... and, among those, where `x^a` and `x^b` share the low 7 bits.
    pub index_agreements: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrupleReport {
    pub seed_count: usize,
    pub steps: u64,
    /// `C(n, 4) 2^-32`.
    pub expected_quadruples: f64,
    pub quadruples_found: usize,
    pub quadruples: Vec<Quadruple>,
}

/// `C(n, 4) / 2^32`.
pub fn expected_quadruples(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 2.0) * (n - 3.0) / 24.0 / 2f64.powi(32)
}

/// `n` distinct nonzero words drawn from a seeded SplitMix64.
pub fn random_seeds(n: usize, rng_seed: u64) -> Vec<u32> {
    let mut rng = SplitMix64::new(rng_seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = rng.next_u32();
        if v != 0 && seen.insert(v) {
            out.push(v);
        }
    }
    out
}

/// Every 4-subset of `seeds` whose XOR vanishes, as sorted seed values.
fn find_quadruples(seeds: &[u32]) -> Vec<[u32; 4]> {
    let mut by_xor: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for (x, &a) in seeds.iter().enumerate() {
        for &b in &seeds[x + 1..] {
            by_xor.entry(a ^ b).or_default().push((a, b));
        }
    }
    let mut found = BTreeSet::new();
    for pairs in by_xor.values().filter(|p| p.len() > 1) {
        for (x, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[x + 1..] {
                // pairs sharing an element would force two equal seeds
                let mut q = [a, b, c, d];
                q.sort_unstable();
                found.insert(q);
            }
        }
    }
    found.into_iter().collect()
}

fn analyze(q: [u32; 4], steps: u64) -> Result<Quadruple> {
    let [va, vb, vc, vd] = q;
    let alpha = va ^ vb;
    let mut ta = va;
    let mut tb = vb;
    let mut tc = vc;
    let mut td = vd;
    let mut tal = alpha;
    let mut sa = CngShr0::from_seed(SeedSpec::Scalar(va))?;
    let mut sb = CngShr0::from_seed(SeedSpec::Scalar(vb))?;
    let mut report = Quadruple {
        seeds: q,
        alpha,
        linear: true,
        msb_zero_steps: 0,
        sign_agreements: 0,
        low7_zero_steps: 0,
        index_agreements: 0,
    };
    for _ in 0..steps {
        ta = shr_transform(ta);
        tb = shr_transform(tb);
        tc = shr_transform(tc);
        td = shr_transform(td);
        tal = shr_transform(tal);
        report.linear &= ta ^ tb == tal && tc ^ td == tal;
        let (xa, xb) = (sa.next_u32(), sb.next_u32());
        if tal >> 31 == 0 {
            report.msb_zero_steps += 1;
            report.sign_agreements += u64::from((xa ^ xb) >> 31 == 0);
        }
        if tal & 0x7f == 0 {
            report.low7_zero_steps += 1;
            report.index_agreements += u64::from((xa ^ xb) & 0x7f == 0);
        }
    }
    Ok(report)
}

/// Find XOR quadruples among `seeds` and check the induced structure over
/// the first `steps` outputs of their scalar-seeded streams.
pub fn xor_quadruple_demo(seeds: &[u32], steps: u64) -> Result<QuadrupleReport> {
    let distinct: BTreeSet<u32> = seeds.iter().copied().filter(|&v| v != 0).collect();
    if distinct.len() < 4 || distinct.len() != seeds.len() {
        return Err(Error::NotEnoughSeeds {
            required: 4,
            got: distinct.len(),
        });
    }
    for &v in seeds {
        seed(SeedSpec::Scalar(v))?;
    }
    let quadruples = find_quadruples(seeds)
        .into_iter()
        .map(|q| analyze(q, steps))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadrupleReport {
        seed_count: seeds.len(),
        steps,
        expected_quadruples: expected_quadruples(seeds.len()),
        quadruples_found: quadruples.len(),
        quadruples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_64_keeps_low_bits() {
        let r = related_seed_lowbits_check(1, 1, 64, 1_000_000).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.first_violation, None);
    }

    #[test]
    fn delta_1_breaks_quickly() {
        let r = related_seed_lowbits_check(1, 1, 1, 16).unwrap();
        assert!(r.first_violation.unwrap() <= 4);
    }

    #[test]
    fn crafted_quadruple() {
        let r = xor_quadruple_demo(&[1, 2, 5, 6], 50).unwrap();
        assert_eq!(r.quadruples_found, 1);
        let q = &r.quadruples[0];
        assert_eq!(q.seeds, [1, 2, 5, 6]);
        assert_eq!(q.alpha, 3);
        assert!(q.linear);
        assert_eq!(q.index_agreements, q.low7_zero_steps);
    }

    #[test]
    fn no_quadruple_in_independent_set() {
        let r = xor_quadruple_demo(&[1, 2, 4, 8, 16], 5).unwrap();
        assert_eq!(r.quadruples_found, 0);
    }

    #[test]
    fn brute_force_agrees() {
        // small words make collisions frequent
        let seeds: Vec<u32> = random_seeds(60, 7)
            .into_iter()
            .map(|v| (v & 0x3ff) | 1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut brute = 0;
        let n = seeds.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        brute += usize::from(seeds[a] ^ seeds[b] ^ seeds[c] ^ seeds[d] == 0);
                    }
                }
            }
        }
        assert!(brute > 0);
        assert_eq!(find_quadruples(&seeds).len(), brute);
    }

    #[test]
    fn seed_validation_and_expectation() {
        assert!(matches!(
            xor_quadruple_demo(&[1, 2, 3], 1),
            Err(Error::NotEnoughSeeds {
                required: 4,
                got: 3
            })
        ));
        assert!(xor_quadruple_demo(&[1, 1, 2, 3], 1).is_err());
        assert!(xor_quadruple_demo(&[0, 1, 2, 3], 1).is_err());
        let e = expected_quadruples(512);
        assert!((0.5..1.0).contains(&e));
        assert_eq!(random_seeds(512, 1).len(), 512);
    }
}
