//! Orbit walks of the 16-bit multiply-with-carry registers.
//!
//! With packed state `y = (c << 16) | w` and `m = a * 2^16 - 1`, one step is
//! `y' = a y mod m`. Since `m` is a safe prime and `a` is a quadratic
//! residue of order `(m - 1) / 2`, the nonzero residues split into exactly two
//! orbits: the residues and the non-residues.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::{mwc_transition, MwcMultiplier, MwcRegister};

/// 7-MSB census of the residual half along one full orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitStats {
    pub multiplier: u32,
    pub start_state: u32,
    pub period: u64,
    /// Counts of `(state & 0xffff) >> 9` over the states visited.
    pub msb7_counts: Vec<u64>,
    pub probabilities: Vec<f64>,
    pub eps: Vec<f64>,
}

impl OrbitStats {
    /// Patterns ordered by decreasing `|eps|`.
    pub fn ranked(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.eps.len()).collect();
        idx.sort_by(|&a, &b| self.eps[b].abs().total_cmp(&self.eps[a].abs()));
        idx
    }

    /// Uniform reference probabilities, `1/128` each.
    pub fn uniform_p(&self) -> Vec<f64> {
        vec![1.0 / self.msb7_counts.len() as f64; self.msb7_counts.len()]
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Whether `state` lies on the orbit of state 1 (the quadratic residues).
pub fn on_unit_orbit(multiplier: MwcMultiplier, state: u32) -> bool {
    let m = multiplier.modulus();
    pow_mod(u64::from(state), (m - 1) / 2, m) == 1
}

/// Smallest valid state not on the orbit of state 1.
pub fn second_orbit_start(multiplier: MwcMultiplier) -> u32 {
    (2u32..)
        .find(|&s| !on_unit_orbit(multiplier, s))
        .expect("a non-residue exists below the modulus")
}

/// Canonical starts of both orbits, unit orbit first.
pub fn orbit_starts(multiplier: MwcMultiplier) -> [u32; 2] {
    [1, second_orbit_start(multiplier)]
}

/// Step from `start` until it recurs, feeding every visited state to
/// `visit`. Returns the period.
pub fn walk_orbit<F: FnMut(u32)>(register: MwcRegister, mut visit: F) -> u64 {
    let a = register.multiplier().value();
    let start = register.state();
    let bound = u64::from(a) << 16;
    let mut s = start;
    let mut n = 0u64;
    loop {
        s = mwc_transition(a, s);
        n += 1;
        visit(s);
        if s == start {
            return n;
        }
        assert!(n <= bound, "orbit walk exceeded the state space");
    }
}

/// Walk the orbit through `start` and census `(state & 0xffff) >> 9`.
pub fn mwc_orbit_census(multiplier: MwcMultiplier, start: u32) -> Result<OrbitStats> {
    let reg = MwcRegister::new(multiplier, start)?;
    let mut counts = vec![0u64; 128];
    let period = walk_orbit(reg, |s| counts[((s & 0xffff) >> 9) as usize] += 1);
    let probabilities: Vec<f64> = counts.iter().map(|&c| c as f64 / period as f64).collect();
    let p = 1.0 / 128.0;
    let eps = probabilities.iter().map(|q| (q - p) / p).collect();
    Ok(OrbitStats {
        multiplier: multiplier.value(),
        start_state: start,
        period,
        msb7_counts: counts,
        probabilities,
        eps,
    })
}

/// Census both orbits concurrently, unit orbit first.
pub fn mwc_orbit_pair(multiplier: MwcMultiplier) -> Result<[OrbitStats; 2]> {
    let [s0, s1] = orbit_starts(multiplier);
    let (a, b) = rayon::join(
        || mwc_orbit_census(multiplier, s0),
        || mwc_orbit_census(multiplier, s1),
    );
    Ok([a?, b?])
}

/// Histogram of the low `nbits` of the residual along the orbit of `start`.
pub fn orbit_low_bits(
    multiplier: MwcMultiplier,
    start: u32,
    nbits: u32,
) -> Result<(u64, Vec<u64>)> {
    let reg = MwcRegister::new(multiplier, start)?;
    let mask = (1u32 << nbits) - 1;
    let mut counts = vec![0u64; 1 << nbits];
    let period = walk_orbit(reg, |s| counts[(s & mask) as usize] += 1);
    Ok((period, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_test_matches_walk_on_small_prefix() {
        let m = MwcMultiplier::W;
        let mut s = 1u32;
        for _ in 0..100_000 {
            s = mwc_transition(m.value(), s);
            assert!(on_unit_orbit(m, s));
        }
        let t = second_orbit_start(m);
        assert!(!on_unit_orbit(m, t));
        assert!((2..t).all(|x| on_unit_orbit(m, x)));
    }

    #[test]
    fn packed_state_is_multiplication_mod_m() {
        for mult in [MwcMultiplier::Z, MwcMultiplier::W] {
            let m = mult.modulus();
            for s in [1u32, 2, 65535, 65536, 123_456_789 % m as u32] {
                let want = (u64::from(mult.value()) * u64::from(s)) % m;
                assert_eq!(u64::from(mwc_transition(mult.value(), s)), want);
            }
        }
    }

    #[test]
    fn w_orbit_low_bits_are_not_uniform() {
        let (period, counts) = orbit_low_bits(MwcMultiplier::W, 1, 7).unwrap();
        assert_eq!(period, 589_823_999);
        assert_eq!(counts.iter().sum::<u64>(), period);
        let p = period as f64 / 128.0;
        let max_eps = counts
            .iter()
            .map(|&c| ((c as f64 - p) / p).abs())
            .fold(0.0, f64::max);
        assert!(max_eps > 1e-3, "max |eps| = {max_eps}");
    }

    #[test]
    fn rejects_fixed_points() {
        assert!(mwc_orbit_census(MwcMultiplier::Z, 0).is_err());
        assert!(mwc_orbit_census(MwcMultiplier::Z, MwcMultiplier::Z.upper_fixed_point()).is_err());
    }
}
