use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{render_view, SceneConfig};
use crate::error::{Error, Result};
use crate::imagecore::{save_depth, save_rgb, ManifestEntry, ObjectShape, SplitTag, ViewManifest};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Train/test tags for `view_count` views: index `i` is train iff
/// `i mod 5 < 3`, then the highest train indices are demoted to test until
/// exactly ⌊0.6·n⌋ remain (614 of 1024).
pub fn interleaved_split(view_count: usize) -> Vec<SplitTag> {
    let mut tags: Vec<SplitTag> = (0..view_count)
        .map(|i| if i % 5 < 3 { SplitTag::Train } else { SplitTag::Test })
        .collect();
    let target = view_count * 3 / 5;
    let mut train = tags.iter().filter(|t| **t == SplitTag::Train).count();
    for tag in tags.iter_mut().rev() {
        if train <= target {
            break;
        }
        if *tag == SplitTag::Train {
            *tag = SplitTag::Test;
            train -= 1;
        }
    }
    tags
}

/// `(rgb, depth)` file names of one view.
pub fn view_file_names(shape: ObjectShape, index: usize) -> (PathBuf, PathBuf) {
    (
        format!("{shape}_{index:04}_rgb.png").into(),
        format!("{shape}_{index:04}_depth.png").into(),
    )
}

/// Renders every view into `out_dir` and writes `manifest.json` there.
/// Views render in parallel; each file depends only on its own view.
pub fn generate_dataset(config: &SceneConfig, out_dir: impl AsRef<Path>) -> Result<ViewManifest> {
    config.validate()?;
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let tags = interleaved_split(config.view_count);

    let entries = (0..config.view_count)
        .into_par_iter()
        .map(|index| {
            let (rgb, depth) = render_view(config, index)?;
            let (rgb_path, depth_path) = view_file_names(config.shape, index);
            save_rgb(&rgb, out_dir.join(&rgb_path))?;
            save_depth(&depth, out_dir.join(&depth_path))?;
            Ok(ManifestEntry {
                index,
                azimuth_degrees: ViewManifest::azimuth_of(index, config.view_count),
                rgb_path,
                depth_path,
                split: tags[index],
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let manifest = ViewManifest {
        object_name: config.shape,
        view_count: config.view_count,
        width: config.width,
        height: config.height,
        depth_range: config.depth_range(),
        seed: config.seed,
        entries,
    };
    manifest.validate()?;
    manifest.save(out_dir.join(MANIFEST_FILE))?;
    Ok(manifest)
}
