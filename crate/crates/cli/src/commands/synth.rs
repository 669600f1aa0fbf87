use std::path::Path;

use holopipe::cgh::{synthesize, Hologram, SynthesisConfig};
use holopipe::imagecore::{load_rgb, ManifestEntry, ViewManifest};
use holopipe::scenegen::MANIFEST_FILE;
use rayon::prelude::*;

use super::{create_dir, external_depth_path, load_depth_sized, select};
use crate::args::SynthArgs;
use crate::config::PipelineConfig;
use crate::error::{summarize_failures, CliError, CliResult};
use crate::index::{stem_for, DepthSource, HologramEntry, HologramIndex};

fn synth_one(
    manifest: &ViewManifest,
    data_dir: &Path,
    source: &DepthSource,
    config: &SynthesisConfig,
    out: &Path,
    entry: &ManifestEntry,
) -> CliResult<HologramEntry> {
    let rgb_path = data_dir.join(&entry.rgb_path);
    let rgb = load_rgb(&rgb_path)?;
    if rgb.dims() != (manifest.width, manifest.height) {
        return Err(CliError::data(format!(
            "{}: image is {}x{}, dataset frames are {}x{}",
            rgb_path.display(),
            rgb.width(),
            rgb.height(),
            manifest.width,
            manifest.height
        )));
    }
    let depth_path = match source {
        DepthSource::GroundTruth => data_dir.join(&entry.depth_path),
        DepthSource::External { dir } => external_depth_path(dir, &entry.depth_path),
    };
    let depth = load_depth_sized(&depth_path, manifest.width, manifest.height)?;
    let holo = synthesize(&rgb, &depth, config, &manifest.depth_range)?;
    let stem = stem_for(manifest.object_name, entry.index);
    let paths = holo.save(out, &stem)?;
    let files = paths.map(|p| p.file_name().map(Into::into).unwrap_or(p));
    Ok(HologramEntry { index: entry.index, split: entry.split, stem, files })
}

pub fn run(args: SynthArgs, mut config: PipelineConfig) -> CliResult<()> {
    let synthesis = &mut config.synthesis;
    if let Some(l) = args.layers {
        synthesis.layer_count = l;
    }
    if let Some(p) = args.phase {
        synthesis.phase_mode = p.into();
    }
    if let Some(k) = args.kernel {
        synthesis.kernel = k.into();
    }
    if let Some(seed) = args.seed {
        config.seed = Some(seed);
        config.apply_seed();
    }
    config.validate()?;

    let data_dir = args.data.unwrap_or(config.paths.data);
    let manifest = ViewManifest::load(data_dir.join(MANIFEST_FILE))?;
    let out = args.out.unwrap_or(config.paths.holograms);
    create_dir(&out)?;
    let source = match args.depth_dir {
        Some(dir) => DepthSource::External { dir },
        None => DepthSource::GroundTruth,
    };
    let picked = select(&manifest.entries, |e| (e.index, e.split), &args.selection)?;
    let results: Vec<(usize, CliResult<HologramEntry>)> = picked
        .par_iter()
        .map(|e| (e.index, synth_one(&manifest, &data_dir, &source, &config.synthesis, &out, e)))
        .collect();

    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (view, r) in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => failures.push((view, e)),
        }
    }
    let written = entries.len();
    HologramIndex {
        object_name: manifest.object_name,
        view_count: manifest.view_count,
        width: manifest.width,
        height: manifest.height,
        depth_range: manifest.depth_range,
        depth_source: source,
        synthesis: config.synthesis,
        entries,
    }
    .save(&out)?;
    println!("synth: {written} holograms ({} files) written to {}", 3 * written, out.display());
    summarize_failures("synth", picked.len(), failures)
}

/// Loads the hologram of `entry` listed in an index directory.
pub fn load_hologram(dir: &Path, entry: &HologramEntry) -> CliResult<Hologram> {
    Ok(Hologram::load(dir, &entry.stem)?)
}
