use std::path::{Path, PathBuf};

use holopipe::imagecore::{ManifestEntry, ViewManifest};
use holopipe::leecode::{lee_encode, LeeCgh};
use holopipe::metrics::{acc_cgh_channel, evaluate_pair_with, MetricReport, MetricRow, SqRelConvention, CSV_COLUMNS};
use holopipe::scenegen::MANIFEST_FILE;
use rayon::prelude::*;

use super::synth::load_hologram;
use super::{create_dir, external_depth_path, load_depth_sized, select};
use crate::args::EvalArgs;
use crate::config::PipelineConfig;
use crate::error::{summarize_failures, CliError, CliResult};
use crate::index::HologramIndex;

struct HologramPair {
    truth_dir: PathBuf,
    truth: HologramIndex,
    estimate_dir: PathBuf,
    estimate: HologramIndex,
}

impl HologramPair {
    fn encoded(dir: &Path, index: &HologramIndex, view: usize) -> CliResult<[LeeCgh; 3]> {
        let entry = index
            .entry(view)
            .ok_or_else(|| CliError::data(format!("{}: no hologram for view {view}", dir.display())))?;
        let holo = load_hologram(dir, entry)?;
        Ok(std::array::from_fn(|c| lee_encode(&holo.channels[c])))
    }

    fn cgh_acc(&self, view: usize) -> CliResult<[f64; 3]> {
        let truth = Self::encoded(&self.truth_dir, &self.truth, view)?;
        let estimate = Self::encoded(&self.estimate_dir, &self.estimate, view)?;
        let mut acc = [0.0; 3];
        for (c, a) in acc.iter_mut().enumerate() {
            *a = acc_cgh_channel(&estimate, &truth, c)?;
        }
        Ok(acc)
    }
}

fn eval_one(
    manifest: &ViewManifest,
    data_dir: &Path,
    estimate_dir: Option<&Path>,
    holograms: Option<&HologramPair>,
    convention: SqRelConvention,
    entry: &ManifestEntry,
) -> CliResult<MetricRow> {
    let (w, h) = (manifest.width, manifest.height);
    let truth = load_depth_sized(&data_dir.join(&entry.depth_path), w, h)?;
    let estimate = match estimate_dir {
        Some(dir) => load_depth_sized(&external_depth_path(dir, &entry.depth_path), w, h)?,
        None => truth.clone(),
    };
    let mut row = evaluate_pair_with(manifest.object_name, entry.index, &estimate, &truth, convention)?;
    if let Some(pair) = holograms {
        row.set_cgh_acc(pair.cgh_acc(entry.index)?);
    }
    Ok(row)
}

pub fn run(args: EvalArgs, config: PipelineConfig) -> CliResult<()> {
    config.validate()?;
    let data_dir = args.data.unwrap_or(config.paths.data);
    let manifest = ViewManifest::load(data_dir.join(MANIFEST_FILE))?;
    let out = args.out.unwrap_or(config.paths.eval);
    let convention = if args.conventional_sq_rel {
        SqRelConvention::Conventional
    } else {
        SqRelConvention::AsPrinted
    };
    let holograms = match (args.truth_holograms, args.estimate_holograms) {
        (Some(truth_dir), Some(estimate_dir)) => Some(HologramPair {
            truth: HologramIndex::load(&truth_dir)?,
            truth_dir,
            estimate: HologramIndex::load(&estimate_dir)?,
            estimate_dir,
        }),
        _ => None,
    };

    create_dir(&out)?;
    let picked = select(&manifest.entries, |e| (e.index, e.split), &args.selection)?;
    let results: Vec<_> = picked
        .par_iter()
        .map(|e| {
            let r = eval_one(&manifest, &data_dir, args.estimate.as_deref(), holograms.as_ref(), convention, e);
            (e.index, r)
        })
        .collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (view, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => failures.push((view, e)),
        }
    }

    let report = MetricReport::new(rows);
    report.write_csv(out.join("report.csv"))?;
    report.write_summary_csv(out.join("summary.csv"))?;
    report.write_json(out.join("report.json"))?;
    for s in report.summaries() {
        println!("eval: {} ({} views)", s.object, s.views);
        for name in CSV_COLUMNS {
            if let Some(m) = s.metrics.get(name) {
                println!("  {name:<10} {m}");
            }
        }
    }
    println!("eval: report written to {}", out.display());
    summarize_failures("eval", picked.len(), failures)
}
