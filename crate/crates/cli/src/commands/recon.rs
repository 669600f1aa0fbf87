use std::path::Path;

use holopipe::recon::{plane_sweep, reconstruct, Region};
use rayon::prelude::*;

use super::synth::load_hologram;
use super::{create_dir, select};
use crate::args::{ReconArgs, Sweep};
use crate::config::PipelineConfig;
use crate::error::{summarize_failures, CliError, CliResult};
use crate::index::{HologramEntry, HologramIndex};

/// Sweep planes used when neither `--distance` nor `--sweep` is given.
const DEFAULT_PLANES: usize = 16;

struct Plan {
    previews: Vec<f64>,
    sweep: Vec<f64>,
    regions: Vec<Region>,
}

/// Returns the best distance per region, or nothing when no sweep ran.
fn recon_one(dir: &Path, out: &Path, plan: &Plan, entry: &HologramEntry) -> CliResult<Vec<f64>> {
    let holo = load_hologram(dir, entry)?;
    for &d in &plan.previews {
        reconstruct(&holo, d)?.save_previews(out, &format!("{}_z{d:.5}", entry.stem))?;
    }
    if plan.sweep.len() < 2 {
        return Ok(Vec::new());
    }
    let sweep = plane_sweep(&holo, &plan.sweep, &plan.regions)?;
    sweep.write_csv(out.join(format!("{}_focus.csv", entry.stem)))?;
    Ok((0..plan.regions.len()).map(|r| sweep.best_distance(r)).collect())
}

pub fn run(args: ReconArgs, config: PipelineConfig) -> CliResult<()> {
    config.validate()?;
    let dir = args.holograms.unwrap_or(config.paths.holograms);
    let index = HologramIndex::load(&dir)?;
    let out = args.out.unwrap_or(config.paths.recon);

    let mut sweep = args.distances.clone();
    match args.sweep {
        Some(s) => sweep.extend(s.distances()),
        None if args.distances.is_empty() => sweep.extend(
            Sweep {
                near: index.depth_range.near,
                far: index.depth_range.far,
                count: DEFAULT_PLANES,
            }
            .distances(),
        ),
        None => {}
    }
    if sweep.iter().any(|d| !d.is_finite()) {
        return Err(CliError::config("reconstruction distances must be finite"));
    }
    sweep.sort_by(f64::total_cmp);
    sweep.dedup();
    let regions = if args.regions.is_empty() {
        vec![Region::new(0, 0, index.width, index.height)]
    } else {
        args.regions.clone()
    };
    let plan = Plan { previews: args.distances, sweep, regions };

    create_dir(&out)?;
    let picked = select(&index.entries, |e| (e.index, e.split), &args.selection)?;
    let results: Vec<_> = picked
        .par_iter()
        .map(|e| (e.index, recon_one(&dir, &out, &plan, e)))
        .collect();
    let mut failures = Vec::new();
    for (view, r) in results {
        match r {
            Ok(best) => {
                for (k, d) in best.iter().enumerate() {
                    println!("recon: view {view} region {k} focus peak at {d:.5} m");
                }
            }
            Err(e) => failures.push((view, e)),
        }
    }
    summarize_failures("recon", picked.len(), failures)
}
