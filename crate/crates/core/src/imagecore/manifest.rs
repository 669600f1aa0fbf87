use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DepthRange;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectShape {
    Torus,
    Cube,
    Cone,
    Sphere,
}

impl ObjectShape {
    pub const ALL: [ObjectShape; 4] = [
        ObjectShape::Torus,
        ObjectShape::Cube,
        ObjectShape::Cone,
        ObjectShape::Sphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObjectShape::Torus => "torus",
            ObjectShape::Cube => "cube",
            ObjectShape::Cone => "cone",
            ObjectShape::Sphere => "sphere",
        }
    }
}

impl fmt::Display for ObjectShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObjectShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ObjectShape::ALL
            .into_iter()
            .find(|shape| shape.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::param("shape", format!("unknown shape {s:?}, expected torus|cube|cone|sphere")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    Train,
    Test,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub index: usize,
    pub azimuth_degrees: f64,
    /// Relative to the manifest's directory.
    pub rgb_path: PathBuf,
    pub depth_path: PathBuf,
    pub split: SplitTag,
}

/// Index of one generated multi-view dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViewManifest {
    pub object_name: ObjectShape,
    pub view_count: usize,
    pub width: usize,
    pub height: usize,
    pub depth_range: DepthRange,
    pub seed: u64,
    pub entries: Vec<ManifestEntry>,
}

impl ViewManifest {
    pub fn azimuth_of(index: usize, view_count: usize) -> f64 {
        index as f64 * 360.0 / view_count as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.view_count == 0 {
            return Err(Error::param("view_count", "must be at least 1"));
        }
        if self.entries.len() != self.view_count {
            return Err(Error::SizeMismatch {
                expected: self.view_count,
                found: self.entries.len(),
                unit: "manifest entries",
            });
        }
        for (i, e) in self.entries.iter().enumerate() {
            if e.index != i {
                return Err(Error::param("entries", format!("entry {i} carries index {}", e.index)));
            }
            if e.azimuth_degrees != Self::azimuth_of(i, self.view_count) {
                return Err(Error::param(
                    "azimuth_degrees",
                    format!("entry {i}: {} != {}", e.azimuth_degrees, Self::azimuth_of(i, self.view_count)),
                ));
            }
        }
        self.depth_range.validate()
    }

    pub fn count(&self, tag: SplitTag) -> usize {
        self.entries.iter().filter(|e| e.split == tag).count()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let manifest: ViewManifest = serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Json {
            path: path.to_path_buf(),
            source: e,
        })?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, self).map_err(|e| Error::Json {
            path: path.to_path_buf(),
            source: e,
        })?;
        w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
    }
}
