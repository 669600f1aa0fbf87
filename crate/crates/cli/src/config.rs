//! Pipeline configuration: file, then `HOLOPIPE_*` environment, then flags.

use std::path::{Path, PathBuf};

use holopipe::cgh::SynthesisConfig;
use holopipe::leecode::SlmSpec;
use holopipe::scenegen::SceneConfig;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub const ENV_PREFIX: &str = "HOLOPIPE_";

/// Default directories for each stage's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PathsConfig {
    pub data: PathBuf,
    pub holograms: PathBuf,
    pub slm: PathBuf,
    pub recon: PathBuf,
    pub eval: PathBuf,
}

impl Default for PathsConfig {
    fn default() -> Self {
        Self {
            data: "data".into(),
            holograms: "holograms".into(),
            slm: "slm".into(),
            recon: "recon".into(),
            eval: "eval".into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub scene: SceneConfig,
    pub synthesis: SynthesisConfig,
    pub slm: SlmSpec,
    pub paths: PathsConfig,
    /// When set, overrides both `scene.seed` and `synthesis.seed`.
    pub seed: Option<u64>,
}

fn parse_file(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("json"));
    if is_json {
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    } else {
        toml::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }
}

/// Sets `HOLOPIPE_SECTION__KEY=value` (or `HOLOPIPE_KEY` at the top level)
/// into `root`. Values parse as JSON when they can and as strings otherwise.
fn overlay_env(root: &mut Value, vars: impl IntoIterator<Item = (String, String)>) -> CliResult<()> {
    let mut vars: Vec<(String, String)> = vars
        .into_iter()
        .filter(|(k, _)| k.starts_with(ENV_PREFIX))
        .collect();
    vars.sort();
    for (key, raw) in vars {
        let path: Vec<String> = key[ENV_PREFIX.len()..].split("__").map(str::to_ascii_lowercase).collect();
        if path.iter().any(String::is_empty) {
            return Err(CliError::config(format!("malformed environment key {key}")));
        }
        let value = serde_json::from_str(&raw).unwrap_or(Value::String(raw));
        let mut node = &mut *root;
        for (depth, part) in path.iter().enumerate() {
            let Value::Object(map) = node else {
                return Err(CliError::config(format!("{key}: `{}` is not a section", path[..depth].join("."))));
            };
            if depth + 1 == path.len() {
                map.insert(part.clone(), value);
                break;
            }
            node = map.entry(part.clone()).or_insert_with(|| Value::Object(Map::new()));
        }
    }
    Ok(())
}

impl PipelineConfig {
    /// Merges an optional config file with environment overrides.
    pub fn load(file: Option<&Path>, env: impl IntoIterator<Item = (String, String)>) -> CliResult<Self> {
        let mut root = match file {
            Some(path) => parse_file(path)?,
            None => Value::Object(Map::new()),
        };
        if !root.is_object() {
            return Err(CliError::config("config root must be a table"));
        }
        overlay_env(&mut root, env)?;
        let mut config: PipelineConfig = serde_path_to_error::deserialize(root)
            .map_err(|e| CliError::config(format!("config field `{}`: {}", e.path(), e.inner())))?;
        config.apply_seed();
        Ok(config)
    }

    pub fn apply_seed(&mut self) {
        if let Some(seed) = self.seed {
            self.scene.seed = seed;
            self.synthesis.seed = seed;
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        self.scene.validate()?;
        self.synthesis.validate()?;
        self.slm.validate()?;
        Ok(())
    }
}
