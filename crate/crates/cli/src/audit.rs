use std::path::PathBuf;

use clap::Subcommand;
use serde::Serialize;

use rngfx::forensics::chi2::{detection_sample_size, expected_chi2};
use rngfx::forensics::orbit::{orbit_low_bits, orbit_starts};
use rngfx::forensics::{
    first_output_bin_census, low_bits_census, mwc_orbit_census, tail_audit_shr0, BinCensus, BinRow,
    Domain, OrbitStats,
};
use rngfx::generators::{x_plus_tx, MwcMultiplier, Shr3, ShrState};
use rngfx::ziggurat::ZigguratTable;

use crate::args::parse_count;
use crate::error::CliError;
use crate::{emit_report, Ctx};

#[derive(Debug, clap::Args)]
pub struct AuditArgs {
    #[command(subcommand)]
    audit: Audit,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "audit", rename_all = "kebab-case")]
enum Audit {
    /// First SHR3-driven deviate for every register value, binned by strip.
    ZiggBins {
        /// Sweep seeds 1..=LIMIT instead of every nonzero word.
        #[arg(long, value_parser = parse_count)]
        limit: Option<u64>,
        /// Rows listed in `top`.
        #[arg(long, default_value_t = 8)]
        top: usize,
    },
    /// Every way the SHR0-driven sampler enters its tail.
    Tail,
    /// 7-MSB census of the residual along multiply-with-carry orbits.
    MwcOrbit {
        #[arg(long, default_value_t = 36969)]
        a: u32,
        /// Walk only the orbit through this state (default: both orbits).
        #[arg(long, value_parser = crate::args::parse_word)]
        start: Option<u32>,
        #[arg(long, default_value_t = 8)]
        top: usize,
    },
    /// Low-bit census of an output map or register.
    Lowbits {
        /// x-plus-tx (all nonzero registers), mwc-z or mwc-w (orbit of state 1).
        #[arg(long, default_value = "x-plus-tx")]
        source: String,
        #[arg(long, default_value_t = 7)]
        bits: u32,
    },
}

#[derive(Debug, Serialize)]
struct Deviation {
    weight_sum: f64,
    detection_sample_size: u64,
    log2_detection_sample_size: f64,
}

fn deviation(p: &[f64], eps: &[f64]) -> Result<Deviation, CliError> {
    let n = detection_sample_size(p, eps)?;
    Ok(Deviation {
        weight_sum: p.iter().zip(eps).map(|(p, e)| p * e * e).sum(),
        detection_sample_size: n,
        log2_detection_sample_size: (n as f64).log2(),
    })
}

#[derive(Debug, Serialize)]
struct ZiggBins {
    source: &'static str,
    strips: usize,
    seeds: u64,
    below_first_edge: u64,
    deviation: Deviation,
    expected_chi2_at_2_30: f64,
    top: Vec<BinRow>,
    rows: Vec<BinRow>,
}

#[derive(Debug, Serialize)]
struct TailRow {
    bin: usize,
    lo: f64,
    hi: f64,
    count: u64,
    q: f64,
    p: f64,
    eps: f64,
    weight: f64,
    /// Normal reference on the nominal edges.
    analytic: f64,
}

#[derive(Debug, Serialize)]
struct Tail {
    eligible: u64,
    entering_count: u64,
    rows: Vec<TailRow>,
    deviation: Deviation,
}

#[derive(Debug, Serialize)]
struct PatternRow {
    pattern: usize,
    count: u64,
    probability: f64,
    eps: f64,
    weight: f64,
}

#[derive(Debug, Serialize)]
struct Orbit {
    start_state: u32,
    period: u64,
    top: Vec<PatternRow>,
    deviation: Deviation,
    msb7_counts: Vec<u64>,
}

#[derive(Debug, Serialize)]
struct MwcOrbit {
    multiplier: u32,
    modulus: u64,
    orbit_period: u64,
    /// Period of the two-register generator, `log2(period_z * period_w)`.
    combined_period_log2: f64,
    orbits: Vec<Orbit>,
}

#[derive(Debug, Serialize)]
struct Lowbits {
    source: String,
    bits: u32,
    domain_size: u64,
    counts: Vec<u64>,
    min: u64,
    max: u64,
    spread: u64,
    max_abs_eps: f64,
}

fn orbit_report(o: OrbitStats, top: usize) -> Result<Orbit, CliError> {
    let p = o.uniform_p();
    let rows = o
        .ranked()
        .into_iter()
        .take(top)
        .map(|i| PatternRow {
            pattern: i,
            count: o.msb7_counts[i],
            probability: o.probabilities[i],
            eps: o.eps[i],
            weight: p[i] * o.eps[i] * o.eps[i],
        })
        .collect();
    Ok(Orbit {
        start_state: o.start_state,
        period: o.period,
        top: rows,
        deviation: deviation(&p, &o.eps)?,
        msb7_counts: o.msb7_counts,
    })
}

fn zigg_bins(ctx: &Ctx, limit: Option<u64>, top: usize) -> Result<ZiggBins, CliError> {
    let t = ZigguratTable::build(128)?;
    let end = limit.map_or(1u64 << 32, |l| (l + 1).min(1 << 32));
    ctx.progress(format!("sweeping {} seeds", end - 1));
    let c: BinCensus = first_output_bin_census(
        &t,
        1..end,
        |s| Shr3(ShrState::new(s as u32).expect("nonzero seed")),
        t.x(),
        ctx.workers,
    )?;
    Ok(ZiggBins {
        source: "shr3",
        strips: t.k(),
        seeds: c.trials,
        below_first_edge: c.below,
        deviation: deviation(&c.p, &c.eps)?,
        expected_chi2_at_2_30: expected_chi2(&c.p, &c.eps, 1 << 30)?,
        top: c.rows_by_weight().into_iter().take(top).collect(),
        rows: c.rows(),
    })
}

fn tail(ctx: &Ctx) -> Result<Tail, CliError> {
    let t = ZigguratTable::build(128)?;
    let a = tail_audit_shr0(&t, ctx.workers)?;
    let rows = a
        .census
        .rows()
        .into_iter()
        .zip(&a.analytic)
        .map(|(r, &analytic)| TailRow {
            bin: r.interval,
            lo: r.lo,
            hi: r.hi,
            count: r.count,
            q: r.q,
            p: r.p,
            eps: r.eps,
            weight: r.weight,
            analytic,
        })
        .collect();
    Ok(Tail {
        eligible: a.eligible,
        entering_count: a.entering_count,
        rows,
        deviation: deviation(&a.census.p, &a.census.eps)?,
    })
}

fn mwc_orbit(ctx: &Ctx, a: u32, start: Option<u32>, top: usize) -> Result<MwcOrbit, CliError> {
    let m = MwcMultiplier::from_value(a)?;
    let starts = match start {
        Some(s) => vec![s],
        None => orbit_starts(m).to_vec(),
    };
    let mut orbits = Vec::new();
    for s in starts {
        ctx.progress(format!("walking orbit of {s} under a={a}"));
        orbits.push(orbit_report(mwc_orbit_census(m, s)?, top)?);
    }
    let combined = (MwcMultiplier::Z.orbit_period() as f64).log2()
        + (MwcMultiplier::W.orbit_period() as f64).log2();
    Ok(MwcOrbit {
        multiplier: a,
        modulus: m.modulus(),
        orbit_period: m.orbit_period(),
        combined_period_log2: combined,
        orbits,
    })
}

fn lowbits(ctx: &Ctx, source: &str, bits: u32) -> Result<Lowbits, CliError> {
    if !(1..=16).contains(&bits) {
        return Err(CliError::Config(format!(
            "--bits must be in 1..=16, got {bits}"
        )));
    }
    let (domain_size, counts) = match source {
        "x-plus-tx" => (
            Domain::NonZero.size(32),
            low_bits_census(x_plus_tx, Domain::NonZero, bits, ctx.workers),
        ),
        "mwc-z" => orbit_low_bits(MwcMultiplier::Z, 1, bits)?,
        "mwc-w" => orbit_low_bits(MwcMultiplier::W, 1, bits)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown lowbits source `{other}`"
            )))
        }
    };
    let min = *counts.iter().min().unwrap();
    let max = *counts.iter().max().unwrap();
    let mean = domain_size as f64 / counts.len() as f64;
    let max_abs_eps = counts
        .iter()
        .map(|&c| ((c as f64 - mean) / mean).abs())
        .fold(0.0, f64::max);
    Ok(Lowbits {
        source: source.to_string(),
        bits,
        domain_size,
        counts,
        min,
        max,
        spread: max - min,
        max_abs_eps,
    })
}

pub fn run(ctx: &Ctx, a: AuditArgs) -> Result<(), CliError> {
    let out = a.output.as_deref();
    let cfg = a.audit.clone();
    match a.audit {
        Audit::ZiggBins { limit, top } => {
            emit_report(out, "audit.zigg-bins", cfg, zigg_bins(ctx, limit, top)?)
        }
        Audit::Tail => emit_report(out, "audit.tail", cfg, tail(ctx)?),
        Audit::MwcOrbit { a, start, top } => {
            emit_report(out, "audit.mwc-orbit", cfg, mwc_orbit(ctx, a, start, top)?)
        }
        Audit::Lowbits { ref source, bits } => {
            emit_report(out, "audit.lowbits", &cfg, lowbits(ctx, source, bits)?)
        }
    }
}
