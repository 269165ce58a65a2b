use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rngfx::forensics::census::census_from_chunks;
use rngfx::forensics::{with_workers, CensusMap, Domain};

use crate::error::CliError;
use crate::{emit_report, Ctx};

#[derive(Debug, clap::Args)]
pub struct CensusArgs {
    /// x-plus-tx, t-minus-r0, identity or custom-shift-triple.
    #[arg(long)]
    map: String,
    /// Shifts for custom-shift-triple.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
    shifts: Option<Vec<u32>>,
    /// Output-space passes; each holds 2^32/CHUNKS one-byte counters.
    #[arg(long, default_value_t = 16)]
    chunks: u32,
    /// Directory of per-chunk checkpoint files; finished chunks are skipped.
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Config<'a> {
    map: &'a CensusMap,
    chunks: u32,
    resume: Option<&'a Path>,
}

#[derive(Debug, Serialize)]
struct Body {
    map: String,
    domain: Domain,
    domain_size: u64,
    codomain_size: u64,
    /// Outputs with exactly `m` preimages, for m = 0..=max.
    multiplicities: BTreeMap<u32, u64>,
    /// Outputs that cannot be produced at all.
    unreachable: u64,
    max_multiplicity: usize,
    conserved: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct Checkpoint {
    map: CensusMap,
    chunks: u32,
    chunk: u32,
    histogram: Vec<u64>,
}

fn checkpoint_path(dir: &Path, chunk: u32, chunks: u32) -> PathBuf {
    dir.join(format!("chunk-{chunk:03}-of-{chunks:03}.json"))
}

fn load(
    dir: &Path,
    map: &CensusMap,
    chunks: u32,
    chunk: u32,
) -> Result<Option<Vec<u64>>, CliError> {
    let path = checkpoint_path(dir, chunk, chunks);
    let Ok(text) = fs::read_to_string(&path) else {
        return Ok(None);
    };
    let cp: Checkpoint = serde_json::from_str(&text)
        .map_err(|e| CliError::Failed(format!("corrupt checkpoint {}: {e}", path.display())))?;
    if cp.map != *map || cp.chunks != chunks || cp.chunk != chunk {
        return Err(CliError::Config(format!(
            "checkpoint {} belongs to a different run",
            path.display()
        )));
    }
    Ok(Some(cp.histogram))
}

fn save(dir: &Path, cp: &Checkpoint) -> Result<(), CliError> {
    let path = checkpoint_path(dir, cp.chunk, cp.chunks);
    let tmp = path.with_extension("tmp");
    let fail = |e: std::io::Error| CliError::Failed(format!("writing {}: {e}", path.display()));
    fs::write(&tmp, serde_json::to_string(cp).unwrap()).map_err(fail)?;
    fs::rename(&tmp, &path).map_err(fail)
}

pub fn run(ctx: &Ctx, a: CensusArgs) -> Result<(), CliError> {
    let triple = a.shifts.as_ref().map(|s| (s[0], s[1], s[2]));
    let map = CensusMap::parse(&a.map, triple)?;
    if !a.chunks.is_power_of_two() || a.chunks > 256 {
        return Err(rngfx::Error::InvalidChunks {
            chunks: a.chunks,
            bits: 32,
        }
        .into());
    }
    if let Some(dir) = &a.resume {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Failed(format!("creating {}: {e}", dir.display())))?;
    }

    let mut done: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    if let Some(dir) = &a.resume {
        for c in 0..a.chunks {
            if let Some(h) = load(dir, &map, a.chunks, c)? {
                done.insert(c, h);
            }
        }
        if !done.is_empty() {
            ctx.progress(format!(
                "resuming: {} of {} chunks already done",
                done.len(),
                a.chunks
            ));
        }
    }
    let todo: Vec<u32> = (0..a.chunks).filter(|c| !done.contains_key(c)).collect();
    let fresh: Vec<(u32, Vec<u64>)> = with_workers(ctx.workers, || {
        todo.par_iter()
            .map(|&c| {
                let h = map.census_chunk(a.chunks, c)?;
                if let Some(dir) = &a.resume {
                    save(
                        dir,
                        &Checkpoint {
                            map,
                            chunks: a.chunks,
                            chunk: c,
                            histogram: h.clone(),
                        },
                    )?;
                }
                ctx.progress(format!(
                    "census {}: chunk {}/{} done",
                    map.name(),
                    c + 1,
                    a.chunks
                ));
                Ok::<_, CliError>((c, h))
            })
            .collect::<Result<_, _>>()
    })?;
    done.extend(fresh);

    let census = census_from_chunks(32, map.domain(), done.values());
    let conserved = census.is_conserved();
    let body = Body {
        map: map.name().to_string(),
        domain: map.domain(),
        domain_size: census.domain_size,
        codomain_size: census.codomain_size(),
        multiplicities: (0..=census.max_multiplicity())
            .map(|m| (m as u32, census.count(m)))
            .collect(),
        unreachable: census.count(0),
        max_multiplicity: census.max_multiplicity(),
        conserved,
    };
    if !conserved {
        return Err(CliError::Failed(
            "census failed its conservation check".into(),
        ));
    }
    let config = Config {
        map: &map,
        chunks: a.chunks,
        resume: a.resume.as_deref(),
    };
    emit_report(a.output.as_deref(), "census", config, body)
}
