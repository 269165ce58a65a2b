//! Named maps for preimage censuses and the canonical seed sweeps.

use serde::{Deserialize, Serialize};

use super::bins::{first_output_bin_census, BinCensus};
use super::census::{census_chunk, preimage_census, Domain, PreimageCensus};
use crate::error::{Error, Result};
use crate::generators::{shift_triple, t_minus_r0, x_plus_tx, Shr3, ShrState};
use crate::ziggurat::ZigguratTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "kebab-case")]
pub enum CensusMap {
    /// `x + T(x)`, SHR3's output as a function of its register.
    XPlusTx,
    /// `T(a) - 69069 a`.
    TMinusR0,
    Identity,
    /// `x + S(x)` for the xorshift `S` with shifts `(a, b, c)`.
    CustomShiftTriple {
        a: u32,
        b: u32,
        c: u32,
    },
}

impl CensusMap {
    pub fn name(&self) -> &'static str {
        match self {
            CensusMap::XPlusTx => "x-plus-tx",
            CensusMap::TMinusR0 => "t-minus-r0",
            CensusMap::Identity => "identity",
            CensusMap::CustomShiftTriple { .. } => "custom-shift-triple",
        }
    }

    /// Parse a map name; `custom-shift-triple` takes its shifts from `triple`.
    pub fn parse(name: &str, triple: Option<(u32, u32, u32)>) -> Result<Self> {
        Ok(match name {
            "x-plus-tx" => CensusMap::XPlusTx,
            "t-minus-r0" => CensusMap::TMinusR0,
            "identity" => CensusMap::Identity,
            "custom-shift-triple" => {
                let (a, b, c) = triple.ok_or_else(|| Error::Unknown {
                    kind: "shift triple for custom-shift-triple",
                    name: "<missing>".into(),
                })?;
                if [a, b, c].iter().any(|&s| s == 0 || s >= 32) {
                    return Err(Error::Unknown {
                        kind: "shift triple",
                        name: format!("{a},{b},{c}"),
                    });
                }
                CensusMap::CustomShiftTriple { a, b, c }
            }
            other => {
                return Err(Error::Unknown {
                    kind: "census map",
                    name: other.to_string(),
                })
            }
        })
    }

    /// Shift-register maps never see zero.
    pub fn domain(&self) -> Domain {
        match self {
            CensusMap::Identity => Domain::Full,
            _ => Domain::NonZero,
        }
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        match *self {
            CensusMap::XPlusTx => x_plus_tx(x),
            CensusMap::TMinusR0 => t_minus_r0(x),
            CensusMap::Identity => x,
            CensusMap::CustomShiftTriple { a, b, c } => x.wrapping_add(shift_triple(x, a, b, c)),
        }
    }

    /// Full 32-bit census of this map.
    pub fn census(&self, chunks: u32, workers: Option<usize>) -> Result<PreimageCensus> {
        // monomorphize the hot loop per map
        match *self {
            CensusMap::XPlusTx => preimage_census(x_plus_tx, 32, self.domain(), chunks, workers),
            CensusMap::TMinusR0 => preimage_census(t_minus_r0, 32, self.domain(), chunks, workers),
            CensusMap::Identity => preimage_census(|x| x, 32, self.domain(), chunks, workers),
            m => preimage_census(move |x| m.apply(x), 32, self.domain(), chunks, workers),
        }
    }

    /// One output chunk of [`CensusMap::census`], for checkpointed runs.
    pub fn census_chunk(&self, chunks: u32, chunk: u32) -> Result<Vec<u64>> {
        let d = self.domain();
        match *self {
            CensusMap::XPlusTx => census_chunk(&x_plus_tx, 32, d, chunks, chunk),
            CensusMap::TMinusR0 => census_chunk(&t_minus_r0, 32, d, chunks, chunk),
            CensusMap::Identity => census_chunk(&|x| x, 32, d, chunks, chunk),
            m => census_chunk(&move |x| m.apply(x), 32, d, chunks, chunk),
        }
    }
}

/// First deviate of the SHR3-driven sampler for every nonzero register
/// value, binned by the table's own strip edges.
pub fn shr3_first_output_census(
    table: &ZigguratTable,
    workers: Option<usize>,
) -> Result<BinCensus> {
    first_output_bin_census(
        table,
        1..(1u64 << 32),
        |s| Shr3(ShrState::new(s as u32).expect("nonzero seed")),
        table.x(),
        workers,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for name in ["x-plus-tx", "t-minus-r0", "identity"] {
            assert_eq!(CensusMap::parse(name, None).unwrap().name(), name);
        }
        assert!(CensusMap::parse("custom-shift-triple", None).is_err());
        assert!(CensusMap::parse("custom-shift-triple", Some((0, 1, 2))).is_err());
        let m = CensusMap::parse("custom-shift-triple", Some((13, 17, 5))).unwrap();
        assert_eq!(m.apply(1), CensusMap::XPlusTx.apply(1));
        assert!(CensusMap::parse("nope", None).is_err());
    }
}
