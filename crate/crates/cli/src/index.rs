//! `holograms.json`: the listing `synth` writes and later stages read.

use std::path::{Path, PathBuf};

use holopipe::cgh::SynthesisConfig;
use holopipe::imagecore::{DepthRange, ObjectShape, SplitTag};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const INDEX_FILE: &str = "holograms.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DepthSource {
    GroundTruth,
    External { dir: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HologramEntry {
    pub index: usize,
    pub split: SplitTag,
    pub stem: String,
    /// R, G, B container files relative to the index directory.
    pub files: [PathBuf; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HologramIndex {
    pub object_name: ObjectShape,
    pub view_count: usize,
    pub width: usize,
    pub height: usize,
    pub depth_range: DepthRange,
    pub depth_source: DepthSource,
    pub synthesis: SynthesisConfig,
    /// Ascending by view index.
    pub entries: Vec<HologramEntry>,
}

impl HologramIndex {
    pub fn load(dir: &Path) -> CliResult<Self> {
        let path = dir.join(INDEX_FILE);
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, dir: &Path) -> CliResult<()> {
        let path = dir.join(INDEX_FILE);
        let json = serde_json::to_string_pretty(self).map_err(|e| CliError::data(e.to_string()))?;
        std::fs::write(&path, json + "\n").map_err(|e| CliError::io(format!("{}: {e}", path.display())))
    }

    pub fn entry(&self, index: usize) -> Option<&HologramEntry> {
        self.entries.iter().find(|e| e.index == index)
    }
}

pub fn stem_for(object: ObjectShape, index: usize) -> String {
    format!("{object}_{index:04}")
}
