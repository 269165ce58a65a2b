use std::fmt::Write as _;
use std::path::PathBuf;

use rngfx::generators::{SeedConfig, Uniform32, Variant, DEFAULT_ICNG};
use rngfx::ziggurat::ZigguratTable;

use crate::args::{parse_count, parse_word};
use crate::error::CliError;
use crate::{emit, Ctx};

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    /// shr3, shr0, cng, mwc32, randn-uni, shrcong-xplustx, kiss-xplustx or ideal.
    #[arg(long)]
    variant: String,
    /// Scalar seed: jsr <- SEED, icng <- 362436069.
    #[arg(long, value_parser = parse_word, conflicts_with = "seed_vector")]
    seed: Option<u32>,
    /// Vector seed: jsr <- A, icng <- B.
    #[arg(long, num_args = 2, value_names = ["A", "B"], value_parser = parse_word)]
    seed_vector: Option<Vec<u32>>,
    #[arg(long, value_parser = parse_word)]
    seed_icng: Option<u32>,
    #[arg(long, value_parser = parse_word)]
    seed_z: Option<u32>,
    #[arg(long, value_parser = parse_word)]
    seed_w: Option<u32>,
    /// Counter of the idealized source.
    #[arg(long, value_parser = parse_count)]
    seed_ideal: Option<u64>,
    #[arg(long, default_value = "10", value_parser = parse_count)]
    count: u64,
    /// Emit normal deviates from the Ziggurat sampler instead of words.
    #[arg(long)]
    normal: bool,
    /// Strips of the Ziggurat table used with --normal.
    #[arg(long, default_value_t = 128)]
    table: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl GenArgs {
    fn seeds(&self) -> SeedConfig {
        let mut cfg = SeedConfig::default();
        if let Some(s) = self.seed {
            cfg.jsr = s;
            cfg.icng = DEFAULT_ICNG;
        }
        if let Some(v) = &self.seed_vector {
            cfg.jsr = v[0];
            cfg.icng = v[1];
        }
        if let Some(v) = self.seed_icng {
            cfg.icng = v;
        }
        if let Some(v) = self.seed_z {
            cfg.z = v;
        }
        if let Some(v) = self.seed_w {
            cfg.w = v;
        }
        if let Some(v) = self.seed_ideal {
            cfg.ideal = v;
        }
        cfg
    }
}

pub fn run(_ctx: &Ctx, a: GenArgs) -> Result<(), CliError> {
    let variant: Variant = a.variant.parse()?;
    let mut g = a.seeds().build(variant)?;
    let mut out = String::new();
    if a.normal {
        let t = ZigguratTable::build(a.table)?;
        for _ in 0..a.count {
            writeln!(out, "{}", t.rnor(&mut g)).unwrap();
        }
    } else {
        for _ in 0..a.count {
            let v = g.next_u32();
            writeln!(out, "{v} (0x{v:08x})").unwrap();
        }
    }
    emit(a.output.as_deref(), &out)
}
