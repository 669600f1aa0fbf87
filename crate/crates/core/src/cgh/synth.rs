use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Kernel, Propagator};
use crate::error::{Error, Result};
use crate::imagecore::{gray_level_to_distance, load_field, save_field, ComplexField, DepthMap, DepthRange, RgbImage};

pub const MAX_LAYERS: usize = 256;
pub const CHANNEL_SUFFIXES: [&str; 3] = ["r", "g", "b"];

/// Initial phase of every layer sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseMode {
    /// Uniform on [0, 2π), drawn per pixel from a stream keyed by
    /// (seed, channel, layer).
    #[default]
    SeededRandom,
    ConstantZero,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SynthesisConfig {
    /// R, G, B wavelengths in meters.
    pub wavelengths: [f64; 3],
    /// Hologram sample pitch. The default, 6 × 3.6 µm, makes a 640-wide
    /// hologram span the 3840-cell panel width.
    pub hologram_pitch: f64,
    pub layer_count: usize,
    /// Extra distance between the depth planes' reference and the hologram plane.
    pub hologram_plane_offset: f64,
    pub phase_mode: PhaseMode,
    pub seed: u64,
    pub kernel: Kernel,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self {
            wavelengths: [638e-9, 520e-9, 450e-9],
            hologram_pitch: 3.6e-6 * 6.0,
            layer_count: 64,
            hologram_plane_offset: 0.0,
            phase_mode: PhaseMode::SeededRandom,
            seed: 0,
            kernel: Kernel::AngularSpectrum,
        }
    }
}

impl SynthesisConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_LAYERS).contains(&self.layer_count) {
            return Err(Error::param("layer_count", format!("must be in 1..=256, got {}", self.layer_count)));
        }
        if !(self.hologram_pitch > 0.0 && self.hologram_pitch.is_finite()) {
            return Err(Error::param("hologram_pitch", "must be positive"));
        }
        if self.wavelengths.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
            return Err(Error::param("wavelengths", "all three must be positive"));
        }
        if !self.hologram_plane_offset.is_finite() {
            return Err(Error::param("hologram_plane_offset", "must be finite"));
        }
        Ok(())
    }
}

/// Bin of gray level `g` among `layer_count` equal-width bins over 0..=255.
pub fn layer_index(gray: u8, layer_count: usize) -> usize {
    usize::from(gray) * layer_count / 256
}

/// Real-valued gray level at the middle of bin `layer`.
pub fn layer_center_gray(layer: usize, layer_count: usize) -> f64 {
    (layer as f64 + 0.5) * 256.0 / layer_count as f64 - 0.5
}

/// Three same-grid complex fields, one per color.
#[derive(Clone, Debug, PartialEq)]
pub struct Hologram {
    pub channels: [ComplexField; 3],
}

impl Hologram {
    pub fn new(channels: [ComplexField; 3]) -> Result<Self> {
        let (d, p) = (channels[0].dims(), channels[0].pitch());
        for c in &channels[1..] {
            if c.dims() != d {
                return Err(Error::dims(d, c.dims()));
            }
            if c.pitch() != p {
                return Err(Error::param("pitch", "hologram channels must share a pitch"));
            }
        }
        Ok(Self { channels })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.channels[0].dims()
    }

    pub fn pitch(&self) -> f64 {
        self.channels[0].pitch()
    }

    pub fn energy(&self) -> f64 {
        self.channels.iter().map(ComplexField::energy).sum()
    }

    pub fn channel_paths(dir: &Path, stem: &str) -> [PathBuf; 3] {
        CHANNEL_SUFFIXES.map(|s| dir.join(format!("{stem}_{s}.cfld")))
    }

    /// Writes `{stem}_r.cfld`, `{stem}_g.cfld`, `{stem}_b.cfld`.
    pub fn save(&self, dir: impl AsRef<Path>, stem: &str) -> Result<[PathBuf; 3]> {
        let paths = Self::channel_paths(dir.as_ref(), stem);
        for (field, path) in self.channels.iter().zip(&paths) {
            save_field(field, path)?;
        }
        Ok(paths)
    }

    pub fn load(dir: impl AsRef<Path>, stem: &str) -> Result<Self> {
        let [r, g, b] = Self::channel_paths(dir.as_ref(), stem);
        Self::new([load_field(r)?, load_field(g)?, load_field(b)?])
    }
}

/// One depth slice of one color before propagation.
#[derive(Clone, Debug)]
pub struct Layer {
    pub index: usize,
    /// Signed distance from this layer to the hologram plane (m).
    pub distance: f64,
    pub field: ComplexField,
}

fn layer_seed(seed: u64, channel: usize, layer: usize) -> u64 {
    // splitmix64 finalizer over the packed key.
    let mut z = seed ^ ((channel as u64) << 56) ^ ((layer as u64) << 40) ^ 0x9E37_79B9_7F4A_7C15;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_inputs(rgb: &RgbImage, depth: &DepthMap, config: &SynthesisConfig, range: &DepthRange) -> Result<()> {
    if rgb.dims() != depth.dims() {
        return Err(Error::dims(rgb.dims(), depth.dims()));
    }
    config.validate()?;
    range.validate()
}

/// Per-color binning shared by every layer of that color.
struct LayerPlan<'a> {
    config: &'a SynthesisConfig,
    range: &'a DepthRange,
    channel: usize,
    width: usize,
    height: usize,
    amplitude: Vec<u8>,
    bins: Vec<usize>,
}

impl<'a> LayerPlan<'a> {
    fn new(rgb: &RgbImage, depth: &DepthMap, config: &'a SynthesisConfig, range: &'a DepthRange, channel: usize) -> Self {
        let (width, height) = rgb.dims();
        Self {
            config,
            range,
            channel,
            width,
            height,
            amplitude: rgb.channel(channel),
            bins: depth.data().iter().map(|&g| layer_index(g, config.layer_count)).collect(),
        }
    }

    /// Ascending indices of bins holding at least one nonzero-amplitude pixel.
    fn occupied(&self) -> Vec<usize> {
        let mut occupied = vec![false; self.config.layer_count];
        for (&b, &a) in self.bins.iter().zip(&self.amplitude) {
            if a != 0 {
                occupied[b] = true;
            }
        }
        (0..occupied.len()).filter(|&b| occupied[b]).collect()
    }

    fn layer(&self, index: usize) -> Result<Layer> {
        let config = self.config;
        let mut rng = ChaCha8Rng::seed_from_u64(layer_seed(config.seed, self.channel, index));
        let mut data = vec![Complex64::new(0.0, 0.0); self.width * self.height];
        for (i, d) in data.iter_mut().enumerate() {
            let phase = match config.phase_mode {
                PhaseMode::SeededRandom => rng.random::<f64>() * TAU,
                PhaseMode::ConstantZero => 0.0,
            };
            if self.bins[i] == index && self.amplitude[i] != 0 {
                *d = Complex64::from_polar(f64::from(self.amplitude[i]) / 255.0, phase);
            }
        }
        let distance = gray_level_to_distance(layer_center_gray(index, config.layer_count), self.range)
            + config.hologram_plane_offset;
        Ok(Layer {
            index,
            distance,
            field: ComplexField::new(
                self.width,
                self.height,
                config.hologram_pitch,
                config.wavelengths[self.channel],
                data,
            )?,
        })
    }
}

/// Nonempty layers of color `channel`, in ascending bin order. A bin is
/// nonempty when at least one of its pixels has nonzero amplitude.
pub fn layer_fields(
    rgb: &RgbImage,
    depth: &DepthMap,
    config: &SynthesisConfig,
    range: &DepthRange,
    channel: usize,
) -> Result<Vec<Layer>> {
    check_inputs(rgb, depth, config, range)?;
    let plan = LayerPlan::new(rgb, depth, config, range, channel);
    plan.occupied().into_iter().map(|b| plan.layer(b)).collect()
}

/// Hologram of an RGB + depth pair: each color's layers are propagated by
/// −distance to the hologram plane and summed, in ascending bin order,
/// in the frequency domain.
pub fn synthesize(rgb: &RgbImage, depth: &DepthMap, config: &SynthesisConfig, range: &DepthRange) -> Result<Hologram> {
    check_inputs(rgb, depth, config, range)?;
    let (w, h) = rgb.dims();
    let channels: Vec<ComplexField> = (0..3)
        .into_par_iter()
        .map(|channel| {
            let plan = LayerPlan::new(rgb, depth, config, range, channel);
            let prop = Propagator::new(w, h, config.hologram_pitch, config.wavelengths[channel], config.kernel);
            let mut acc = vec![Complex64::new(0.0, 0.0); w * h];
            for index in plan.occupied() {
                let layer = plan.layer(index)?;
                let mut spectrum = layer.field.into_data();
                prop.forward(&mut spectrum);
                prop.accumulate_transfer(&mut acc, &spectrum, -layer.distance);
            }
            prop.inverse(&mut acc);
            ComplexField::new(w, h, config.hologram_pitch, config.wavelengths[channel], acc)
        })
        .collect::<Result<_>>()?;
    let [r, g, b]: [ComplexField; 3] = channels.try_into().expect("three channels");
    Hologram::new([r, g, b])
}
