pub mod encode;
pub mod eval;
pub mod gen;
pub mod recon;
pub mod synth;

use std::path::{Path, PathBuf};

use holopipe::imagecore::{load_depth, DepthMap, SplitTag};

use crate::args::{Selection, SplitArg};
use crate::error::{CliError, CliResult};

/// Items matching `--views` and `--split`, in their original order. Every
/// explicitly requested view must exist.
pub fn select<'a, T>(items: &'a [T], key: impl Fn(&T) -> (usize, SplitTag), sel: &Selection) -> CliResult<Vec<&'a T>> {
    if let Some(views) = &sel.views {
        for v in &views.0 {
            if !items.iter().any(|it| key(it).0 == *v) {
                return Err(CliError::config(format!("view {v} is not available")));
            }
        }
    }
    let picked: Vec<&T> = items
        .iter()
        .filter(|it| {
            let (index, split) = key(it);
            let in_list = sel.views.as_ref().is_none_or(|v| v.0.binary_search(&index).is_ok());
            let in_split = match sel.split.unwrap_or(SplitArg::All) {
                SplitArg::All => true,
                SplitArg::Train => split == SplitTag::Train,
                SplitArg::Test => split == SplitTag::Test,
            };
            in_list && in_split
        })
        .collect();
    if picked.is_empty() {
        return Err(CliError::config("the view selection is empty"));
    }
    Ok(picked)
}

pub fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))
}

/// `dir/<file name of depth_path>`: external depth maps share the dataset's
/// depth file names.
pub fn external_depth_path(dir: &Path, depth_path: &Path) -> PathBuf {
    dir.join(depth_path.file_name().unwrap_or(depth_path.as_os_str()))
}

/// Loads a depth map and checks it against the dataset frame size.
pub fn load_depth_sized(path: &Path, width: usize, height: usize) -> CliResult<DepthMap> {
    let depth = load_depth(path)?;
    if depth.dims() != (width, height) {
        return Err(CliError::data(format!(
            "{}: depth map is {}x{}, dataset frames are {width}x{height}",
            path.display(),
            depth.width(),
            depth.height()
        )));
    }
    Ok(depth)
}
