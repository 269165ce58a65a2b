//! Ziggurat tables for the standard normal density and the rejection sampler
//! that consumes raw 32-bit words.
//!
//! The table layout is the classic one: `x[0] = 0 < x[1] < ... < x[k-1] = r`,
//! each strip `[x[i-1], x[i]]` of equal area `v` under `f(x) = exp(-x^2/2)`,
//! with the base strip (index 0) also covering the tail beyond `r`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{uni_to_real, Uniform32};

const TWO_POW_31: f64 = 2147483648.0;

/// Unnormalized normal density.
#[inline]
pub fn density(x: f64) -> f64 {
    (-0.5 * x * x).exp()
}

/// `∫_r^∞ exp(-t^2/2) dt`.
pub fn tail_area(r: f64) -> f64 {
    (std::f64::consts::PI / 2.0).sqrt() * libm::erfc(r / std::f64::consts::SQRT_2)
}

/// Common strip area for a given right edge.
pub fn strip_area(r: f64) -> f64 {
    r * density(r) + tail_area(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Closure {
    /// The recursion crossed zero before reaching the first strip.
    Overshoot,
    /// `f(x_1) + v / x_1 - 1`; zero for the exact `r`.
    Residual(f64),
}

impl Closure {
    fn too_small_r(self) -> bool {
        match self {
            Closure::Overshoot => true,
            Closure::Residual(res) => res > 0.0,
        }
    }

    fn magnitude(self) -> f64 {
        match self {
            Closure::Overshoot => f64::INFINITY,
            Closure::Residual(res) => res.abs(),
        }
    }
}

/// Run the downward recursion `x[i-1] = f^-1(f(x[i]) + v / x[i])` from
/// `x[k-1] = r`, filling `xs[1..k]` when provided.
fn descend(r: f64, k: usize, mut xs: Option<&mut [f64]>) -> Closure {
    let v = strip_area(r);
    let mut x = r;
    if let Some(xs) = xs.as_deref_mut() {
        xs[k - 1] = r;
    }
    for i in (2..k).rev() {
        let y = density(x) + v / x;
        if y >= 1.0 {
            return Closure::Overshoot;
        }
        x = (-2.0 * y.ln()).sqrt();
        if let Some(xs) = xs.as_deref_mut() {
            xs[i - 1] = x;
        }
    }
    Closure::Residual(density(x) + v / x - 1.0)
}

/// Precomputed strip geometry plus the integer/real lookup tables the
/// sampler indexes with the low bits of each word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZigguratTable {
    k: usize,
    x: Vec<f64>,
    r: f64,
    v: f64,
    kn: Vec<u32>,
    wn: Vec<f64>,
    fn_: Vec<f64>,
    closure_residual: f64,
}

/// Which branch of the sampler produced a deviate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Fast,
    Wedge,
    Tail,
}

/// Closure tolerance required from the root finder.
pub const CLOSURE_TOLERANCE: f64 = 1e-12;

impl ZigguratTable {
    /// Solve for `r` by bisection and build all tables for `k` strips.
    pub fn build(k: usize) -> Result<Self> {
        let (mut lo, mut hi) = match k {
            128 => (3.0, 4.0),
            64 => (2.5, 4.0),
            other => return Err(Error::UnsupportedTableSize(other)),
        };
        if !descend(lo, k, None).too_small_r() || descend(hi, k, None).too_small_r() {
            return Err(Error::NoConvergence(format!(
                "[{lo}, {hi}] does not bracket the root for k = {k}"
            )));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if descend(mid, k, None).too_small_r() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (r, closure) = [lo, hi]
            .into_iter()
            .map(|r| (r, descend(r, k, None)))
            .min_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
            .unwrap();
        if closure.magnitude() >= CLOSURE_TOLERANCE {
            return Err(Error::NoConvergence(format!(
                "closure residual {closure:?} at r = {r}"
            )));
        }
        Ok(Self::from_right_edge(r, k, closure.magnitude()))
    }

    fn from_right_edge(r: f64, k: usize, closure_residual: f64) -> Self {
        let v = strip_area(r);
        let mut x = vec![0.0; k];
        descend(r, k, Some(&mut x));
        let fr = density(r);

        let mut kn = vec![0u32; k];
        let mut wn = vec![0.0; k];
        let mut fn_ = vec![0.0; k];
        // Base strip: a rectangle of width v / f(r) whose part beyond r
        // stands in for the tail.
        kn[0] = (r * fr / v * TWO_POW_31) as u32;
        wn[0] = v / fr / TWO_POW_31;
        fn_[0] = 1.0;
        for i in 1..k {
            kn[i] = (x[i - 1] / x[i] * TWO_POW_31) as u32;
            wn[i] = x[i] / TWO_POW_31;
            fn_[i] = density(x[i]);
        }
        Self {
            k,
            x,
            r,
            v,
            kn,
            wn,
            fn_,
            closure_residual,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mask(&self) -> u32 {
        self.k as u32 - 1
    }

    /// Strip edges `x[0..k]`.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn kn(&self) -> &[u32] {
        &self.kn
    }

    pub fn wn(&self) -> &[f64] {
        &self.wn
    }

    pub fn fn_table(&self) -> &[f64] {
        &self.fn_
    }

    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    /// Largest deviation from the equal-area condition over strips `1..k`.
    pub fn max_area_error(&self) -> f64 {
        (1..self.k)
            .map(|i| (self.x[i] * (density(self.x[i - 1]) - density(self.x[i])) - self.v).abs())
            .fold(0.0, f64::max)
    }

    /// Probability that a uniformly random word is accepted on the fast path.
    pub fn fast_path_rate(&self) -> f64 {
        self.kn
            .iter()
            .map(|&t| f64::from(t) / TWO_POW_31)
            .sum::<f64>()
            / self.k as f64
    }

    /// Fast-path test: `Some(hz * wn[iz])` when `|hz| < kn[iz]`.
    #[inline]
    pub fn fast_path(&self, hz: i32) -> Option<f64> {
        let iz = (hz as u32 & self.mask()) as usize;
        if i64::from(hz).abs() < i64::from(self.kn[iz]) {
            Some(f64::from(hz) * self.wn[iz])
        } else {
            None
        }
    }

    /// Wedge acceptance for strip `iz >= 1` given a uniform `u`.
    #[inline]
    pub fn wedge_accepts(&self, iz: usize, x: f64, u: f64) -> bool {
        self.fn_[iz] + u * (self.fn_[iz - 1] - self.fn_[iz]) < density(x)
    }

    /// Tail candidate from a pair of uniforms: `Some(x)` with `r + x` the
    /// magnitude, or `None` when the pair is rejected.
    #[inline]
    pub fn tail_candidate(&self, u1: f64, u2: f64) -> Option<f64> {
        let x = -u1.ln() / self.r;
        let y = -u2.ln();
        if y + y < x * x {
            None
        } else {
            Some(x)
        }
    }

    /// One normal deviate.
    #[inline]
    pub fn rnor<S: Uniform32 + ?Sized>(&self, src: &mut S) -> f64 {
        let hz = src.next_u32() as i32;
        match self.fast_path(hz) {
            Some(x) => x,
            None => self.nfix(src, hz).0,
        }
    }

    /// One deviate together with the branch that produced it.
    pub fn rnor_traced<S: Uniform32 + ?Sized>(&self, src: &mut S) -> (f64, Branch) {
        let hz = src.next_u32() as i32;
        match self.fast_path(hz) {
            Some(x) => (x, Branch::Fast),
            None => self.nfix(src, hz),
        }
    }

    /// Slow path after a failed fast-path test on `hz`: wedge rejection for
    /// strips `>= 1`, tail sampling for strip 0, redraw otherwise.
    pub fn nfix<S: Uniform32 + ?Sized>(&self, src: &mut S, mut hz: i32) -> (f64, Branch) {
        loop {
            let iz = (hz as u32 & self.mask()) as usize;
            if iz == 0 {
                return (self.tail_sample(src, hz > 0), Branch::Tail);
            }
            let x = f64::from(hz) * self.wn[iz];
            if self.wedge_accepts(iz, x, uni_to_real(src.next_u32())) {
                return (x, Branch::Wedge);
            }
            hz = src.next_u32() as i32;
            if let Some(x) = self.fast_path(hz) {
                return (x, Branch::Fast);
            }
        }
    }

    /// Rejection sampling beyond `r`; both uniforms are drawn as `UNI`.
    pub fn tail_sample<S: Uniform32 + ?Sized>(&self, src: &mut S, positive: bool) -> f64 {
        loop {
            let u1 = uni_to_real(src.next_u32());
            let u2 = uni_to_real(src.next_u32());
            if let Some(x) = self.tail_candidate(u1, u2) {
                return if positive { self.r + x } else { -self.r - x };
            }
        }
    }

    /// `i,x_i,kn_i,wn_i,fn_i` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,x_i,kn_i,wn_i,fn_i\n");
        for i in 0..self.k {
            writeln!(
                out,
                "{i},{:.16e},{},{:.16e},{:.16e}",
                self.x[i], self.kn[i], self.wn[i], self.fn_[i]
            )
            .unwrap();
        }
        out
    }
}

/// A table bound to a uniform source.
#[derive(Debug, Clone)]
pub struct ZigguratSampler<'t, S> {
    pub table: &'t ZigguratTable,
    pub source: S,
}

impl<'t, S: Uniform32> ZigguratSampler<'t, S> {
    pub fn new(table: &'t ZigguratTable, source: S) -> Self {
        Self { table, source }
    }

    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        self.table.rnor(&mut self.source)
    }
}

impl<S: Uniform32> Iterator for ZigguratSampler<'_, S> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_normal())
    }
}
