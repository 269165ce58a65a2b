use std::path::PathBuf;

use rngfx::forensics::{run_experiment, ExperimentConfig};
use rngfx::generators::{SeedConfig, Variant};
use rngfx::report::Report;
use rngfx::ziggurat::ZigguratTable;
use serde::Serialize;

use crate::args::parse_count;
use crate::error::CliError;
use crate::{emit, Ctx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct ExperimentArgs {
    /// Uniform source under the 128-strip sampler.
    #[arg(long)]
    variant: String,
    /// First checkpoint.
    #[arg(long, default_value = "2^20", value_parser = parse_count)]
    min: u64,
    /// Last checkpoint.
    #[arg(long, default_value = "2^34", value_parser = parse_count)]
    max: u64,
    /// Checkpoints grow by 2^STEP.
    #[arg(long, default_value_t = 2)]
    step: u32,
    #[arg(long, default_value_t = 200)]
    bins: usize,
    #[arg(long, default_value_t = -7.0, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, default_value_t = 7.0, allow_hyphen_values = true)]
    hi: f64,
    /// Threshold is (k'-1) + C·sqrt(2k').
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    #[arg(long, default_value_t = SeedConfig::default().jsr)]
    seed: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// `min, min·2^step, ...` up to `max`, ending exactly at `max`.
fn checkpoints(min: u64, max: u64, step: u32) -> Result<Vec<u64>, CliError> {
    if min == 0 || min > max || step == 0 || step > 16 {
        return Err(CliError::Config(
            "checkpoints need 0 < min <= max and 1 <= step <= 16".into(),
        ));
    }
    let mut out = Vec::new();
    let mut n = min;
    while n < max {
        out.push(n);
        n = n.saturating_mul(1 << step);
    }
    out.push(max);
    Ok(out)
}

pub fn run(ctx: &Ctx, a: ExperimentArgs) -> Result<(), CliError> {
    let variant: Variant = a.variant.parse()?;
    let config = ExperimentConfig {
        nbins: a.bins,
        lo: a.lo,
        hi: a.hi,
        checkpoints: checkpoints(a.min, a.max, a.step)?,
        c: a.c,
    };
    config
        .validate()
        .map_err(|_| CliError::Config("invalid bin range or checkpoints".into()))?;
    let seeds = SeedConfig {
        jsr: a.seed,
        ..SeedConfig::default()
    };
    let generator = seeds.build(variant)?;
    let table = ZigguratTable::build(128)?;
    let curve = run_experiment(&table, generator, &config, |p| {
        ctx.progress(format!(
            "{variant}: N=2^{:.1} T={:.2} threshold={:.2} ({} bins)",
            (p.n as f64).log2(),
            p.statistic,
            p.threshold,
            p.bins
        ))
    })?;
    let text = match a.format {
        Format::Csv => curve.to_csv(),
        Format::Json => {
            #[derive(Serialize)]
            struct Cfg<'a> {
                variant: String,
                seeds: SeedConfig,
                experiment: &'a ExperimentConfig,
            }
            let cfg = Cfg {
                variant: variant.to_string(),
                seeds,
                experiment: &config,
            };
            let mut s = Report::new("experiment", cfg, &curve).to_json();
            s.push('\n');
            s
        }
    };
    emit(a.output.as_deref(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(checkpoints(4, 64, 2).unwrap(), vec![4, 16, 64]);
        assert_eq!(checkpoints(4, 100, 2).unwrap(), vec![4, 16, 64, 100]);
        assert_eq!(checkpoints(8, 8, 1).unwrap(), vec![8]);
        assert!(checkpoints(0, 8, 1).is_err());
        assert!(checkpoints(16, 8, 1).is_err());
    }
}
