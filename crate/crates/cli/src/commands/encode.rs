use std::path::Path;

use holopipe::leecode::{embed_to_slm, lee_encode, save_slm_rasters, LeeCgh, SlmRaster, SlmSpec};
use rayon::prelude::*;

use super::synth::load_hologram;
use super::{create_dir, select};
use crate::args::EncodeArgs;
use crate::config::PipelineConfig;
use crate::error::{summarize_failures, CliResult};
use crate::index::{HologramEntry, HologramIndex};

fn encode_one(dir: &Path, out: &Path, slm: &SlmSpec, entry: &HologramEntry) -> CliResult<()> {
    let holo = load_hologram(dir, entry)?;
    let cghs: [LeeCgh; 3] = std::array::from_fn(|c| lee_encode(&holo.channels[c]));
    let rasters: Vec<SlmRaster> = cghs.iter().map(|c| embed_to_slm(c, slm)).collect::<Result<_, _>>()?;
    let rasters: [SlmRaster; 3] = rasters.try_into().expect("three colors");
    save_slm_rasters(&cghs, &rasters, slm, holo.pitch(), out, &entry.stem)?;
    Ok(())
}

pub fn run(args: EncodeArgs, config: PipelineConfig) -> CliResult<()> {
    config.validate()?;
    let dir = args.holograms.unwrap_or(config.paths.holograms);
    let index = HologramIndex::load(&dir)?;
    let out = args.out.unwrap_or(config.paths.slm);
    create_dir(&out)?;
    let picked = select(&index.entries, |e| (e.index, e.split), &args.selection)?;
    let failures: Vec<_> = picked
        .par_iter()
        .map(|e| (e.index, encode_one(&dir, &out, &config.slm, e)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter_map(|(v, r)| r.err().map(|e| (v, e)))
        .collect();
    println!(
        "encode: {} of {} holograms written as {}x{} panel rasters to {}",
        picked.len() - failures.len(),
        picked.len(),
        config.slm.width,
        config.slm.height,
        out.display()
    );
    summarize_failures("encode", picked.len(), failures)
}
