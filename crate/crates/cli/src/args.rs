use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holopipe::cgh::{Kernel, PhaseMode};
use holopipe::recon::Region;

#[derive(Debug, Parser)]
#[command(name = "holopipe", version, about = "Synthetic RGB-D datasets, layer-based CGH synthesis, Lee encoding, reconstruction and depth-map evaluation")]
pub struct Cli {
    /// TOML or JSON pipeline config.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Worker thread cap. Output bytes do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<NonZeroUsize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a multi-view RGB-D dataset and its manifest.
    Gen(GenArgs),
    /// Synthesize one hologram per view from ground-truth or external depth.
    Synth(SynthArgs),
    /// Lee-encode holograms and embed them into SLM panel rasters.
    Encode(EncodeArgs),
    /// Reconstruct holograms at chosen distances and score focus curves.
    Recon(ReconArgs),
    /// Compare estimated depth maps (and optionally their holograms) with ground truth.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SplitArg {
    All,
    Train,
    Test,
}

/// View subset shared by every per-view command.
#[derive(Clone, Debug, Default, Args)]
pub struct Selection {
    /// Comma-separated indices and inclusive ranges, e.g. `0-3,10`.
    #[arg(long, value_name = "LIST", value_parser = parse_view_list)]
    pub views: Option<ViewList>,
    #[arg(long, value_enum)]
    pub split: Option<SplitArg>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// torus, cube, cone or sphere.
    #[arg(long)]
    pub shape: Option<String>,
    /// Number of views around the orbit.
    #[arg(long)]
    pub views: Option<usize>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Encode depth over the nominal 14.2 cm span instead of the near/far endpoints.
    #[arg(long)]
    pub nominal_span: bool,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    SeededRandom,
    ConstantZero,
}

impl From<PhaseArg> for PhaseMode {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::SeededRandom => PhaseMode::SeededRandom,
            PhaseArg::ConstantZero => PhaseMode::ConstantZero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    AngularSpectrum,
    Fresnel,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::AngularSpectrum => Kernel::AngularSpectrum,
            KernelArg::Fresnel => Kernel::Fresnel,
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Dataset directory holding manifest.json.
    #[arg(long, value_name = "DIR")]
    pub data: Option<PathBuf>,
    /// Take depth maps from this directory, matched by depth file name.
    #[arg(long, value_name = "DIR")]
    pub depth_dir: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub selection: Selection,
    #[arg(long)]
    pub layers: Option<usize>,
    #[arg(long, value_enum)]
    pub phase: Option<PhaseArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Directory written by `synth`.
    #[arg(long, value_name = "DIR")]
    pub holograms: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub selection: Selection,
}

/// `near:far:count` in meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sweep {
    pub near: f64,
    pub far: f64,
    pub count: usize,
}

impl Sweep {
    pub fn distances(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.near];
        }
        (0..self.count)
            .map(|k| self.near + (self.far - self.near) * k as f64 / (self.count - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Args)]
pub struct ReconArgs {
    #[arg(long, value_name = "DIR")]
    pub holograms: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub selection: Selection,
    /// Reconstruction distance in meters; previews are written for each.
    #[arg(long = "distance", value_name = "M")]
    pub distances: Vec<f64>,
    /// Evenly spaced focus-sweep planes, `near:far:count` in meters.
    #[arg(long, value_name = "NEAR:FAR:COUNT", value_parser = parse_sweep)]
    pub sweep: Option<Sweep>,
    /// Focus region `x,y,width,height`; defaults to the full frame.
    #[arg(long = "region", value_name = "X,Y,W,H", value_parser = parse_region)]
    pub regions: Vec<Region>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Ground-truth dataset directory holding manifest.json.
    #[arg(long, value_name = "DIR")]
    pub data: Option<PathBuf>,
    /// Estimated depth maps, matched by depth file name. Defaults to the ground truth.
    #[arg(long, value_name = "DIR")]
    pub estimate: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub selection: Selection,
    /// Holograms synthesized from ground-truth depth.
    #[arg(long, value_name = "DIR", requires = "estimate_holograms")]
    pub truth_holograms: Option<PathBuf>,
    /// Holograms synthesized from the estimated depth.
    #[arg(long, value_name = "DIR", requires = "truth_holograms")]
    pub estimate_holograms: Option<PathBuf>,
    /// Report Sq rel divided by y′ instead of y′².
    #[arg(long)]
    pub conventional_sq_rel: bool,
}

/// Sorted, deduplicated view indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViewList(pub Vec<usize>);

pub fn parse_view_list(s: &str) -> Result<ViewList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("invalid view list entry {part:?}");
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err("empty view list".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(ViewList(out))
}

fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [near, far, count] = parts[..] else {
        return Err("expected NEAR:FAR:COUNT".into());
    };
    let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("invalid distance {v:?}"));
    let count: usize = count.trim().parse().map_err(|_| format!("invalid plane count {count:?}"))?;
    if count == 0 {
        return Err("plane count must be positive".into());
    }
    Ok(Sweep { near: num(near)?, far: num(far)?, count })
}

fn parse_region(s: &str) -> Result<Region, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("invalid region component {p:?}")))
        .collect::<Result<_, _>>()?;
    let [x, y, width, height] = v[..] else {
        return Err("expected X,Y,W,H".into());
    };
    Ok(Region::new(x, y, width, height))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn view_lists() {
        assert_eq!(parse_view_list("3,0-2,2").unwrap().0, vec![0, 1, 2, 3]);
        assert!(parse_view_list("4-1").is_err());
        assert!(parse_view_list("a").is_err());
        assert!(parse_view_list("").is_err());
    }

    #[test]
    fn sweeps_and_regions() {
        let s = parse_sweep("0.1:0.2:3").unwrap();
        let d = s.distances();
        assert_eq!(d.len(), 3);
        assert!((d[1] - 0.15).abs() < 1e-15);
        assert!(parse_sweep("0.1:0.2").is_err());
        assert_eq!(parse_region("1,2,3,4").unwrap(), Region::new(1, 2, 3, 4));
        assert!(parse_region("1,2,3").is_err());
    }
}
