use std::path::PathBuf;

use clap::Subcommand;
use serde::Serialize;

use rngfx::forensics::seeds::random_seeds;
use rngfx::forensics::{related_seed_lowbits_check, xor_quadruple_demo};

use crate::args::{parse_count, parse_word};
use crate::error::CliError;
use crate::{emit_report, Ctx};

#[derive(Debug, clap::Args)]
pub struct SeedcheckArgs {
    #[command(subcommand)]
    mode: Mode,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
enum Mode {
    /// Compare low bits of the streams seeded [I J] and [I J+DELTA].
    Lowbits {
        #[arg(long, value_parser = parse_word)]
        i: u32,
        #[arg(long, value_parser = parse_word)]
        j: u32,
        #[arg(long, default_value = "64", value_parser = parse_word)]
        delta: u32,
        #[arg(long, default_value = "1000000", value_parser = parse_count)]
        steps: u64,
    },
    /// Look for seed quadruples with vanishing XOR.
    Quadruple {
        #[arg(long, num_args = 1.., value_parser = parse_word, conflicts_with = "random", required_unless_present = "random")]
        seeds: Option<Vec<u32>>,
        /// Draw this many distinct random seeds instead.
        #[arg(long)]
        random: Option<usize>,
        /// Seed of the generator drawing --random seeds.
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
        #[arg(long, default_value_t = 16)]
        steps: u64,
    },
}

pub fn run(_ctx: &Ctx, a: SeedcheckArgs) -> Result<(), CliError> {
    let out = a.output.as_deref();
    let cfg = a.mode.clone();
    match a.mode {
        Mode::Lowbits { i, j, delta, steps } => emit_report(
            out,
            "seedcheck.lowbits",
            cfg,
            related_seed_lowbits_check(i, j, delta, steps)?,
        ),
        Mode::Quadruple {
            seeds,
            random,
            rng_seed,
            steps,
        } => {
            let seeds = match (seeds, random) {
                (Some(s), _) => s,
                (None, Some(n)) => random_seeds(n, rng_seed),
                (None, None) => unreachable!("clap requires one of --seeds/--random"),
            };
            emit_report(
                out,
                "seedcheck.quadruple",
                cfg,
                xor_quadruple_demo(&seeds, steps)?,
            )
        }
    }
}
