use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::LeeCgh;
use crate::error::{Error, Result};
use crate::imagecore::raster::save_gray_plane;

/// SLM cells used by one hologram pixel: `L₁ L₂ L₃ L₄` side by side along x.
pub const CELLS_PER_PIXEL: usize = 4;

/// Amplitude panel geometry. Defaults to the 3840×2160, 3.6 µm, 8-bit LCoS.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SlmSpec {
    pub width: usize,
    pub height: usize,
    pub pitch: f64,
    pub bit_depth: u32,
}

impl Default for SlmSpec {
    fn default() -> Self {
        Self {
            width: 3840,
            height: 2160,
            pitch: 3.6e-6,
            bit_depth: 8,
        }
    }
}

impl SlmSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::param("slm.width/height", "must be positive"));
        }
        if !(self.pitch > 0.0 && self.pitch.is_finite()) {
            return Err(Error::param("slm.pitch", "must be positive"));
        }
        if self.bit_depth != 8 {
            return Err(Error::param("slm.bit_depth", format!("only 8-bit panels are supported, got {}", self.bit_depth)));
        }
        Ok(())
    }
}

/// Where the active hologram region sits inside the panel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlmLayout {
    pub offset_x: usize,
    pub offset_y: usize,
    pub active_width: usize,
    pub active_height: usize,
    pub cells_per_pixel: usize,
}

/// One color's full-panel 8-bit raster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlmRaster {
    pub width: usize,
    pub height: usize,
    pub layout: SlmLayout,
    pub data: Vec<u8>,
}

/// Lays the quantized coefficients out on the panel, each hologram pixel
/// becoming a horizontal run of four cells, centered with zero padding.
pub fn embed_to_slm(cgh: &LeeCgh, slm: &SlmSpec) -> Result<SlmRaster> {
    slm.validate()?;
    let (w, h) = cgh.dims();
    let active_width = w * CELLS_PER_PIXEL;
    if active_width > slm.width || h > slm.height {
        return Err(Error::TooLargeForPanel {
            width: w,
            height: h,
            slm_width: slm.width,
            slm_height: slm.height,
        });
    }
    let layout = SlmLayout {
        offset_x: (slm.width - active_width) / 2,
        offset_y: (slm.height - h) / 2,
        active_width,
        active_height: h,
        cells_per_pixel: CELLS_PER_PIXEL,
    };
    let mut data = vec![0u8; slm.width * slm.height];
    let q = cgh.quantized();
    for y in 0..h {
        let row = (layout.offset_y + y) * slm.width + layout.offset_x;
        for x in 0..w {
            let i = y * w + x;
            for k in 0..CELLS_PER_PIXEL {
                data[row + x * CELLS_PER_PIXEL + k] = q[k][i];
            }
        }
    }
    Ok(SlmRaster {
        width: slm.width,
        height: slm.height,
        layout,
        data,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlmChannelMeta {
    pub color: String,
    pub wavelength: f64,
    /// Coefficient value mapped to gray 255.
    pub scale: f64,
    pub file: PathBuf,
}

/// JSON sidecar written next to the per-color panel PNGs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlmSidecar {
    pub layout_kind: String,
    pub coefficient_order: [String; 4],
    pub slm: SlmSpec,
    pub hologram_width: usize,
    pub hologram_height: usize,
    pub hologram_pitch: f64,
    pub layout: SlmLayout,
    pub channels: Vec<SlmChannelMeta>,
}

const COLOR_SUFFIX: [&str; 3] = ["r", "g", "b"];

/// Writes `{stem}_slm_{r,g,b}.png` and `{stem}_slm.json` into `dir`.
pub fn save_slm_rasters(
    cghs: &[LeeCgh; 3],
    rasters: &[SlmRaster; 3],
    slm: &SlmSpec,
    hologram_pitch: f64,
    dir: impl AsRef<Path>,
    stem: &str,
) -> Result<SlmSidecar> {
    let dir = dir.as_ref();
    let mut channels = Vec::with_capacity(3);
    for c in 0..3 {
        let file = PathBuf::from(format!("{stem}_slm_{}.png", COLOR_SUFFIX[c]));
        save_gray_plane(&rasters[c].data, rasters[c].width, rasters[c].height, &dir.join(&file))?;
        channels.push(SlmChannelMeta {
            color: COLOR_SUFFIX[c].to_string(),
            wavelength: cghs[c].wavelength(),
            scale: cghs[c].scale(),
            file,
        });
    }
    let sidecar = SlmSidecar {
        layout_kind: "lee-4cell-horizontal".into(),
        coefficient_order: ["L1 (0)", "L2 (pi/2)", "L3 (pi)", "L4 (3pi/2)"].map(String::from),
        slm: *slm,
        hologram_width: cghs[0].width(),
        hologram_height: cghs[0].height(),
        hologram_pitch,
        layout: rasters[0].layout,
        channels,
    };
    let path = dir.join(format!("{stem}_slm.json"));
    let json = serde_json::to_string_pretty(&sidecar).map_err(|e| Error::Json {
        path: path.clone(),
        source: e,
    })?;
    std::fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(sidecar)
}
