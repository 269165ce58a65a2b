//! Bit-exact 32-bit uniform generators.
//!
//! Every generator is a finite state machine: a small `Copy` state, a pure
//! transition returning `(next_state, output)`, and nothing else. All
//! arithmetic is modulo 2^32, shifts are logical.
//!
//! | generator        | state            | output                         |
//! |------------------|------------------|--------------------------------|
//! | SHR3             | `jsr`            | `jsr + T(jsr)`                 |
//! | SHR0             | `jsr`            | `T(jsr)`                       |
//! | CONG             | `icng`           | `69069 icng + 1234567`         |
//! | MWC32            | `z`, `w`         | `(z' << 16) + (w' & 0xffff)`   |
//! | CNG+SHR0         | `jsr`, `icng`    | `icng' + jsr'`                 |
//! | SHR+CONG (x+Tx)  | `jsr`, `icng`    | `jsr + T(jsr) + icng'`         |
//! | KISS (x+Tx)      | all four         | `jsr + T(jsr) + icng' + MWC32` |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONG_MULTIPLIER: u32 = 69069;
pub const CONG_INCREMENT: u32 = 1234567;
/// `icng` value installed by scalar seeding.
pub const DEFAULT_ICNG: u32 = 362436069;
/// Constant of the `UNI` macro. Deliberately not 2^-32.
pub const UNI_SCALE: f64 = 2.328306e-10;

/// Common interface for anything that yields 32-bit words.
pub trait Uniform32 {
    fn next_u32(&mut self) -> u32;
}

impl<T: Uniform32 + ?Sized> Uniform32 for &mut T {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (**self).next_u32()
    }
}

/// The three-shift xorshift map `x ^= x << 13; x ^= x >> 17; x ^= x << 5`.
#[inline]
pub const fn shr_transform(x: u32) -> u32 {
    shift_triple(x, 13, 17, 5)
}

/// xorshift with arbitrary left/right/left shift amounts.
#[inline]
pub const fn shift_triple(mut x: u32, a: u32, b: u32, c: u32) -> u32 {
    x ^= x << a;
    x ^= x >> b;
    x ^= x << c;
    x
}

/// SHR3's output as a function of the register before the step.
#[inline]
pub const fn x_plus_tx(x: u32) -> u32 {
    x.wrapping_add(shr_transform(x))
}

/// Multiplicative part of the congruential step.
#[inline]
pub const fn cong_r0(x: u32) -> u32 {
    x.wrapping_mul(CONG_MULTIPLIER)
}

/// Full congruential step.
#[inline]
pub const fn cong_r(x: u32) -> u32 {
    cong_r0(x).wrapping_add(CONG_INCREMENT)
}

/// `T(a) - R0(a)`: the term linking consecutive CNG+SHR0 outputs.
#[inline]
pub const fn t_minus_r0(x: u32) -> u32 {
    shr_transform(x).wrapping_sub(cong_r0(x))
}

/// Interpret a word as two's complement and map it into (0, 1) the way the
/// `UNI` macro does.
#[inline]
pub fn uni_to_real(x: u32) -> f64 {
    0.5 + f64::from(x as i32) * UNI_SCALE
}

/// Shift-register state. Never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct ShrState(u32);

impl ShrState {
    pub fn new(jsr: u32) -> Result<Self> {
        if jsr == 0 {
            Err(Error::ZeroJsrSeed)
        } else {
            Ok(Self(jsr))
        }
    }

    #[inline]
    pub fn jsr(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for ShrState {
    type Error = Error;
    fn try_from(jsr: u32) -> Result<Self> {
        Self::new(jsr)
    }
}

impl From<ShrState> for u32 {
    fn from(s: ShrState) -> u32 {
        s.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CongState {
    pub icng: u32,
}

impl CongState {
    pub fn new(icng: u32) -> Self {
        Self { icng }
    }
}

/// Multiplier of a 16-bit multiply-with-carry register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MwcMultiplier {
    /// 36969, used by `ZNEW`.
    Z,
    /// 18000, used by `WNEW`.
    W,
}

impl MwcMultiplier {
    #[inline]
    pub const fn value(self) -> u32 {
        match self {
            MwcMultiplier::Z => 36969,
            MwcMultiplier::W => 18000,
        }
    }

    pub fn from_value(a: u32) -> Result<Self> {
        match a {
            36969 => Ok(MwcMultiplier::Z),
            18000 => Ok(MwcMultiplier::W),
            _ => Err(Error::Unknown {
                kind: "MWC multiplier",
                name: a.to_string(),
            }),
        }
    }

    /// `m = a * 2^16 - 1`, a safe prime for both multipliers.
    pub const fn modulus(self) -> u64 {
        ((self.value() as u64) << 16) - 1
    }

    /// Period of every non-trivial orbit, `(m - 1) / 2`.
    pub const fn orbit_period(self) -> u64 {
        (self.modulus() - 1) / 2
    }

    /// Packed value of the non-zero fixed point `(a - 1, 2^16 - 1)`.
    pub const fn upper_fixed_point(self) -> u32 {
        ((self.value() - 1) << 16) | 0xffff
    }
}

/// Packed `(carry << 16) | residual` register with carry below the multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MwcRegister {
    multiplier: MwcMultiplier,
    state: u32,
}

impl MwcRegister {
    /// Rejects carries out of range and both trivial fixed points.
    pub fn new(multiplier: MwcMultiplier, state: u32) -> Result<Self> {
        let reg = Self::new_unchecked_fixed_point(multiplier, state)?;
        if reg.is_fixed_point() {
            return Err(Error::InvalidMwcState {
                multiplier: multiplier.value(),
                state,
                reason: "trivial fixed point",
            });
        }
        Ok(reg)
    }

    /// Accepts the fixed points, still rejects carries `>= a`.
    pub fn new_unchecked_fixed_point(multiplier: MwcMultiplier, state: u32) -> Result<Self> {
        if state >> 16 >= multiplier.value() {
            return Err(Error::InvalidMwcState {
                multiplier: multiplier.value(),
                state,
                reason: "carry not below multiplier",
            });
        }
        Ok(Self { multiplier, state })
    }

    #[inline]
    pub fn multiplier(self) -> MwcMultiplier {
        self.multiplier
    }

    #[inline]
    pub fn state(self) -> u32 {
        self.state
    }

    #[inline]
    pub fn carry(self) -> u32 {
        self.state >> 16
    }

    #[inline]
    pub fn residual(self) -> u32 {
        self.state & 0xffff
    }

    pub fn is_fixed_point(self) -> bool {
        self.state == 0 || self.state == self.multiplier.upper_fixed_point()
    }
}

/// `a * (s & 0xffff) + (s >> 16)`; cannot overflow for `a < 2^16`.
#[inline]
pub const fn mwc_transition(a: u32, s: u32) -> u32 {
    a * (s & 0xffff) + (s >> 16)
}

#[inline]
pub fn shr3_next(s: ShrState) -> (ShrState, u32) {
    let next = shr_transform(s.0);
    (ShrState(next), s.0.wrapping_add(next))
}

#[inline]
pub fn shr0_next(s: ShrState) -> (ShrState, u32) {
    let next = shr_transform(s.0);
    (ShrState(next), next)
}

#[inline]
pub fn cong_next(s: CongState) -> (CongState, u32) {
    let next = cong_r(s.icng);
    (CongState { icng: next }, next)
}

#[inline]
pub fn mwc_step(r: MwcRegister) -> (MwcRegister, u32) {
    let next = mwc_transition(r.multiplier.value(), r.state);
    (
        MwcRegister {
            multiplier: r.multiplier,
            state: next,
        },
        next,
    )
}

#[inline]
pub fn mwc32_next(z: MwcRegister, w: MwcRegister) -> ((MwcRegister, MwcRegister), u32) {
    let (z, zs) = mwc_step(z);
    let (w, ws) = mwc_step(w);
    ((z, w), (zs << 16).wrapping_add(ws & 0xffff))
}

#[inline]
pub fn randn_uni_next(s: ShrState, c: CongState) -> ((ShrState, CongState), u32) {
    let (s, js) = shr0_next(s);
    let (c, ic) = cong_next(c);
    ((s, c), ic.wrapping_add(js))
}

/// Seeding modes of the two-register normal generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSpec {
    /// `jsr <- a`, `icng <- 362436069`.
    Scalar(u32),
    /// `jsr <- a`, `icng <- b`.
    Vector(u32, u32),
}

pub fn seed(spec: SeedSpec) -> Result<(ShrState, CongState)> {
    let (a, b) = match spec {
        SeedSpec::Scalar(a) => (a, DEFAULT_ICNG),
        SeedSpec::Vector(a, b) => (a, b),
    };
    Ok((ShrState::new(a)?, CongState::new(b)))
}

// Stateful wrappers: one type per output map so hot loops monomorphize.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shr3(pub ShrState);

impl Uniform32 for Shr3 {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let (s, out) = shr3_next(self.0);
        self.0 = s;
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shr0(pub ShrState);

impl Uniform32 for Shr0 {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let (s, out) = shr0_next(self.0);
        self.0 = s;
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cong(pub CongState);

impl Uniform32 for Cong {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let (s, out) = cong_next(self.0);
        self.0 = s;
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mwc32 {
    pub z: MwcRegister,
    pub w: MwcRegister,
}

impl Mwc32 {
    pub fn new(z: u32, w: u32) -> Result<Self> {
        Ok(Self {
            z: MwcRegister::new(MwcMultiplier::Z, z)?,
            w: MwcRegister::new(MwcMultiplier::W, w)?,
        })
    }
}

impl Uniform32 for Mwc32 {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let ((z, w), out) = mwc32_next(self.z, self.w);
        self.z = z;
        self.w = w;
        out
    }
}

/// Two-register generator underlying the 64-strip normal sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CngShr0 {
    pub shr: ShrState,
    pub cng: CongState,
}

impl CngShr0 {
    pub fn from_seed(spec: SeedSpec) -> Result<Self> {
        let (shr, cng) = seed(spec)?;
        Ok(Self { shr, cng })
    }

    /// `(2^32 - 1) * 2^32`; the two periods are coprime.
    pub const PERIOD: u128 = (u32::MAX as u128) << 32;
}

impl Uniform32 for CngShr0 {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let ((s, c), out) = randn_uni_next(self.shr, self.cng);
        self.shr = s;
        self.cng = c;
        out
    }
}

/// Shift register and congruential generator, shift register contributing
/// `x + T(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrCongXPlusTx {
    pub shr: ShrState,
    pub cng: CongState,
}

impl Uniform32 for ShrCongXPlusTx {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let (s, sh) = shr3_next(self.shr);
        let (c, ic) = cong_next(self.cng);
        self.shr = s;
        self.cng = c;
        sh.wrapping_add(ic)
    }
}

/// `ShrCongXPlusTx` plus an MWC32 term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KissXPlusTx {
    pub shr: ShrState,
    pub cng: CongState,
    pub mwc: Mwc32,
}

impl Uniform32 for KissXPlusTx {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        let (s, sh) = shr3_next(self.shr);
        let (c, ic) = cong_next(self.cng);
        self.shr = s;
        self.cng = c;
        sh.wrapping_add(ic).wrapping_add(self.mwc.next_u32())
    }
}

/// SplitMix64 reduced to its high 32 bits. Serves as the idealized uniform
/// control source; it is not one of the generators under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitMix64 {
    pub counter: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { counter: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.counter;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl Uniform32 for SplitMix64 {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }
}

/// Tagged union over every supported generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "state", rename_all = "snake_case")]
pub enum Generator {
    Shr3(Shr3),
    Shr0(Shr0),
    Cong(Cong),
    Mwc32(Mwc32),
    CngPlusShr0(CngShr0),
    ShrCongXPlusTx(ShrCongXPlusTx),
    KissXPlusTx(KissXPlusTx),
    Ideal(SplitMix64),
}

impl Uniform32 for Generator {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        match self {
            Generator::Shr3(g) => g.next_u32(),
            Generator::Shr0(g) => g.next_u32(),
            Generator::Cong(g) => g.next_u32(),
            Generator::Mwc32(g) => g.next_u32(),
            Generator::CngPlusShr0(g) => g.next_u32(),
            Generator::ShrCongXPlusTx(g) => g.next_u32(),
            Generator::KissXPlusTx(g) => g.next_u32(),
            Generator::Ideal(g) => g.next_u32(),
        }
    }
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::Shr3(_) => "shr3",
            Generator::Shr0(_) => "shr0",
            Generator::Cong(_) => "cng",
            Generator::Mwc32(_) => "mwc32",
            Generator::CngPlusShr0(_) => "randn-uni",
            Generator::ShrCongXPlusTx(_) => "shrcong-xplustx",
            Generator::KissXPlusTx(_) => "kiss-xplustx",
            Generator::Ideal(_) => "ideal",
        }
    }

    /// Exact period, where it fits in a `u128`.
    pub fn period(&self) -> Option<u128> {
        let z = MwcMultiplier::Z.orbit_period() as u128;
        let w = MwcMultiplier::W.orbit_period() as u128;
        let shr = u32::MAX as u128;
        let cng = 1u128 << 32;
        match self {
            Generator::Shr3(_) | Generator::Shr0(_) => Some(shr),
            Generator::Cong(_) => Some(cng),
            Generator::Mwc32(_) => Some(z * w),
            Generator::CngPlusShr0(_) | Generator::ShrCongXPlusTx(_) => Some(shr * cng),
            Generator::KissXPlusTx(_) => Some(shr * cng * z * w),
            Generator::Ideal(_) => Some(1u128 << 64),
        }
    }

    const TAG_SHR3: u8 = 1;
    const TAG_SHR0: u8 = 2;
    const TAG_CONG: u8 = 3;
    const TAG_MWC32: u8 = 4;
    const TAG_CNG_PLUS_SHR0: u8 = 5;
    const TAG_SHRCONG: u8 = 6;
    const TAG_KISS: u8 = 7;
    const TAG_IDEAL: u8 = 8;

    /// Binary state encoding: one tag byte followed by little-endian fields.
    ///
    /// | tag | variant          | fields                       |
    /// |-----|------------------|------------------------------|
    /// | 1   | shr3             | jsr: u32                     |
    /// | 2   | shr0             | jsr: u32                     |
    /// | 3   | cng              | icng: u32                    |
    /// | 4   | mwc32            | z: u32, w: u32               |
    /// | 5   | randn-uni        | jsr: u32, icng: u32          |
    /// | 6   | shrcong-xplustx  | jsr: u32, icng: u32          |
    /// | 7   | kiss-xplustx     | jsr, icng, z, w: u32         |
    /// | 8   | ideal            | counter: u64                 |
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(17);
        let mut put = |v: u32| out.extend_from_slice(&v.to_le_bytes());
        let tag = match *self {
            Generator::Shr3(Shr3(s)) => {
                put(s.jsr());
                Self::TAG_SHR3
            }
            Generator::Shr0(Shr0(s)) => {
                put(s.jsr());
                Self::TAG_SHR0
            }
            Generator::Cong(Cong(c)) => {
                put(c.icng);
                Self::TAG_CONG
            }
            Generator::Mwc32(m) => {
                put(m.z.state());
                put(m.w.state());
                Self::TAG_MWC32
            }
            Generator::CngPlusShr0(g) => {
                put(g.shr.jsr());
                put(g.cng.icng);
                Self::TAG_CNG_PLUS_SHR0
            }
            Generator::ShrCongXPlusTx(g) => {
                put(g.shr.jsr());
                put(g.cng.icng);
                Self::TAG_SHRCONG
            }
            Generator::KissXPlusTx(g) => {
                put(g.shr.jsr());
                put(g.cng.icng);
                put(g.mwc.z.state());
                put(g.mwc.w.state());
                Self::TAG_KISS
            }
            Generator::Ideal(g) => {
                out.extend_from_slice(&g.counter.to_le_bytes());
                Self::TAG_IDEAL
            }
        };
        out.insert(0, tag);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (&tag, body) = bytes
            .split_first()
            .ok_or_else(|| Error::MalformedState("empty input".into()))?;
        let words = |n: usize| -> Result<Vec<u32>> {
            if body.len() != 4 * n {
                return Err(Error::MalformedState(format!(
                    "tag {tag} expects {} payload bytes, got {}",
                    4 * n,
                    body.len()
                )));
            }
            Ok(body
                .chunks_exact(4)
                .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
                .collect())
        };
        let shr = ShrState::new;
        Ok(match tag {
            Self::TAG_SHR3 => Generator::Shr3(Shr3(shr(words(1)?[0])?)),
            Self::TAG_SHR0 => Generator::Shr0(Shr0(shr(words(1)?[0])?)),
            Self::TAG_CONG => Generator::Cong(Cong(CongState::new(words(1)?[0]))),
            Self::TAG_MWC32 => {
                let w = words(2)?;
                Generator::Mwc32(Mwc32::new(w[0], w[1])?)
            }
            Self::TAG_CNG_PLUS_SHR0 => {
                let w = words(2)?;
                Generator::CngPlusShr0(CngShr0 {
                    shr: shr(w[0])?,
                    cng: CongState::new(w[1]),
                })
            }
            Self::TAG_SHRCONG => {
                let w = words(2)?;
                Generator::ShrCongXPlusTx(ShrCongXPlusTx {
                    shr: shr(w[0])?,
                    cng: CongState::new(w[1]),
                })
            }
            Self::TAG_KISS => {
                let w = words(4)?;
                Generator::KissXPlusTx(KissXPlusTx {
                    shr: shr(w[0])?,
                    cng: CongState::new(w[1]),
                    mwc: Mwc32::new(w[2], w[3])?,
                })
            }
            Self::TAG_IDEAL => {
                let raw: [u8; 8] = body.try_into().map_err(|_| {
                    Error::MalformedState(format!(
                        "tag 8 expects 8 payload bytes, got {}",
                        body.len()
                    ))
                })?;
                Generator::Ideal(SplitMix64::new(u64::from_le_bytes(raw)))
            }
            other => return Err(Error::MalformedState(format!("unknown tag {other}"))),
        })
    }
}

/// Generator family by name, independent of its state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Shr3,
    Shr0,
    Cng,
    Mwc32,
    RandnUni,
    ShrcongXplustx,
    KissXplustx,
    Ideal,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::Shr3,
        Variant::Shr0,
        Variant::Cng,
        Variant::Mwc32,
        Variant::RandnUni,
        Variant::ShrcongXplustx,
        Variant::KissXplustx,
        Variant::Ideal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Shr3 => "shr3",
            Variant::Shr0 => "shr0",
            Variant::Cng => "cng",
            Variant::Mwc32 => "mwc32",
            Variant::RandnUni => "randn-uni",
            Variant::ShrcongXplustx => "shrcong-xplustx",
            Variant::KissXplustx => "kiss-xplustx",
            Variant::Ideal => "ideal",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let alias = match key.as_str() {
            "cng-plus-shr0" | "cng+shr0" => "randn-uni",
            "cong" => "cng",
            "mwc32-ziggurat" => "mwc32",
            other => other,
        };
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == alias)
            .ok_or_else(|| Error::Unknown {
                kind: "variant",
                name: s.to_string(),
            })
    }
}

/// Register values used to instantiate any variant. Each variant reads only
/// the registers it owns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedConfig {
    pub jsr: u32,
    pub icng: u32,
    pub z: u32,
    pub w: u32,
    pub ideal: u64,
}

impl Default for SeedConfig {
    fn default() -> Self {
        Self {
            jsr: 123456789,
            icng: DEFAULT_ICNG,
            z: 362436069,
            w: 521288629,
            ideal: 0,
        }
    }
}

impl SeedConfig {
    pub fn build(&self, variant: Variant) -> Result<Generator> {
        let shr = || ShrState::new(self.jsr);
        let cng = CongState::new(self.icng);
        Ok(match variant {
            Variant::Shr3 => Generator::Shr3(Shr3(shr()?)),
            Variant::Shr0 => Generator::Shr0(Shr0(shr()?)),
            Variant::Cng => Generator::Cong(Cong(cng)),
            Variant::Mwc32 => Generator::Mwc32(Mwc32::new(self.z, self.w)?),
            Variant::RandnUni => Generator::CngPlusShr0(CngShr0 { shr: shr()?, cng }),
            Variant::ShrcongXplustx => {
                Generator::ShrCongXPlusTx(ShrCongXPlusTx { shr: shr()?, cng })
            }
            Variant::KissXplustx => Generator::KissXPlusTx(KissXPlusTx {
                shr: shr()?,
                cng,
                mwc: Mwc32::new(self.z, self.w)?,
            }),
            Variant::Ideal => Generator::Ideal(SplitMix64::new(self.ideal)),
        })
    }
}

impl Generator {
    pub fn variant(&self) -> Variant {
        match self {
            Generator::Shr3(_) => Variant::Shr3,
            Generator::Shr0(_) => Variant::Shr0,
            Generator::Cong(_) => Variant::Cng,
            Generator::Mwc32(_) => Variant::Mwc32,
            Generator::CngPlusShr0(_) => Variant::RandnUni,
            Generator::ShrCongXPlusTx(_) => Variant::ShrcongXplustx,
            Generator::KissXPlusTx(_) => Variant::KissXplustx,
            Generator::Ideal(_) => Variant::Ideal,
        }
    }
}
