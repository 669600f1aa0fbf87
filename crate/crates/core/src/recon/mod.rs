//! Numerical reconstruction of holograms at chosen focal planes and
//! focus-curve plane sweeps.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cgh::{Hologram, Kernel, Propagator, CHANNEL_SUFFIXES};
use crate::error::{Error, Result};
use crate::imagecore::raster::save_gray_plane;
use crate::imagecore::{save_rgb, RgbImage};

/// Channel whose intensity drives the focus score.
pub const FOCUS_CHANNEL: usize = 1;

/// Axis-aligned pixel rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Region {
    pub fn new(x: usize, y: usize, width: usize, height: usize) -> Self {
        Self { x, y, width, height }
    }

    /// Square of side `2·half + 1` around `(cx, cy)`, clipped to the image.
    pub fn around(cx: usize, cy: usize, half: usize, image_w: usize, image_h: usize) -> Self {
        let x0 = cx.saturating_sub(half);
        let y0 = cy.saturating_sub(half);
        let x1 = (cx + half + 1).min(image_w);
        let y1 = (cy + half + 1).min(image_h);
        Self::new(x0, y0, x1 - x0, y1 - y0)
    }

    fn check(&self, w: usize, h: usize) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(self.empty());
        }
        if self.x + self.width > w || self.y + self.height > h {
            return Err(Error::param(
                "region",
                format!("{self:?} exceeds the {w}x{h} hologram"),
            ));
        }
        Ok(())
    }

    fn empty(&self) -> Error {
        Error::EmptyRegion {
            x: self.x,
            y: self.y,
            width: self.width,
            height: self.height,
        }
    }
}

/// Tenengrad: mean of the squared Sobel gradient magnitude over the region's
/// pixels that have a full 3×3 neighborhood inside the image.
pub fn tenengrad(intensity: &[f64], width: usize, height: usize, region: &Region) -> Result<f64> {
    region.check(width, height)?;
    let xs = region.x.max(1)..(region.x + region.width).min(width.saturating_sub(1));
    let ys = region.y.max(1)..(region.y + region.height).min(height.saturating_sub(1));
    if xs.is_empty() || ys.is_empty() {
        return Err(region.empty());
    }
    let at = |x: usize, y: usize| intensity[y * width + x];
    let mut sum = 0.0;
    for y in ys.clone() {
        for x in xs.clone() {
            let gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            let gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
            sum += gx * gx + gy * gy;
        }
    }
    Ok(sum / (xs.len() * ys.len()) as f64)
}

/// Intensity of every color at one reconstruction distance.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconPlane {
    pub distance: f64,
    pub width: usize,
    pub height: usize,
    pub intensity: [Vec<f64>; 3],
}

impl ReconPlane {
    pub fn focus_score(&self, region: &Region) -> Result<f64> {
        tenengrad(&self.intensity[FOCUS_CHANNEL], self.width, self.height, region)
    }

    pub fn total_intensity(&self) -> f64 {
        self.intensity.iter().flatten().sum()
    }

    /// One color scaled so its maximum maps to 255.
    pub fn channel_preview(&self, channel: usize) -> Vec<u8> {
        let plane = &self.intensity[channel];
        let max = plane.iter().copied().fold(0.0, f64::max);
        plane
            .iter()
            .map(|&v| if max > 0.0 { (255.0 * v / max).round() as u8 } else { 0 })
            .collect()
    }

    /// RGB preview, each color max-normalized on its own.
    pub fn preview(&self) -> RgbImage {
        let planes: [Vec<u8>; 3] = std::array::from_fn(|c| self.channel_preview(c));
        let data = (0..self.width * self.height)
            .flat_map(|i| [planes[0][i], planes[1][i], planes[2][i]])
            .collect();
        RgbImage::new(self.width, self.height, data).expect("plane dimensions are valid")
    }

    /// Writes `{stem}_{r,g,b}.png` and `{stem}_rgb.png`.
    pub fn save_previews(&self, dir: impl AsRef<Path>, stem: &str) -> Result<()> {
        let dir = dir.as_ref();
        for (c, suffix) in CHANNEL_SUFFIXES.iter().enumerate() {
            save_gray_plane(
                &self.channel_preview(c),
                self.width,
                self.height,
                &dir.join(format!("{stem}_{suffix}.png")),
            )?;
        }
        save_rgb(&self.preview(), dir.join(format!("{stem}_rgb.png")))
    }
}

fn check_distance(distance: f64) -> Result<()> {
    if !(distance > 0.0 && distance <= 1.0) {
        return Err(Error::param("distance", format!("must lie in (0, 1] m, got {distance}")));
    }
    Ok(())
}

pub fn reconstruct(holo: &Hologram, distance: f64) -> Result<ReconPlane> {
    reconstruct_with(holo, distance, Kernel::AngularSpectrum)
}

/// Propagates every color by `+distance` and records `|field|²`.
pub fn reconstruct_with(holo: &Hologram, distance: f64, kernel: Kernel) -> Result<ReconPlane> {
    check_distance(distance)?;
    let (width, height) = holo.dims();
    let planes: Vec<Vec<f64>> = holo
        .channels
        .par_iter()
        .map(|field| Propagator::for_field(field, kernel).propagate(field, distance).intensity())
        .collect();
    let [r, g, b]: [Vec<f64>; 3] = planes.try_into().expect("three channels");
    Ok(ReconPlane {
        distance,
        width,
        height,
        intensity: [r, g, b],
    })
}

/// Focus curves of a plane sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FocusSweep {
    pub distances: Vec<f64>,
    pub regions: Vec<Region>,
    /// `scores[region][distance]`.
    pub scores: Vec<Vec<f64>>,
    /// Index into `distances` of each region's highest score (first on ties).
    pub best: Vec<usize>,
}

impl FocusSweep {
    pub fn best_distance(&self, region: usize) -> f64 {
        self.distances[self.best[region]]
    }

    /// `distance,region,score` rows, distances outermost.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["distance", "region", "score"])?;
        for (di, d) in self.distances.iter().enumerate() {
            for (ri, scores) in self.scores.iter().enumerate() {
                w.write_record([d.to_string(), ri.to_string(), scores[di].to_string()])?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

pub fn plane_sweep(holo: &Hologram, distances: &[f64], regions: &[Region]) -> Result<FocusSweep> {
    plane_sweep_with(holo, distances, regions, Kernel::AngularSpectrum)
}

/// Scores every region at every distance with [`tenengrad`] on the green
/// channel's intensity. The spectrum is computed once; distances run in
/// parallel and each result depends only on its own distance.
pub fn plane_sweep_with(holo: &Hologram, distances: &[f64], regions: &[Region], kernel: Kernel) -> Result<FocusSweep> {
    if distances.len() < 2 {
        return Err(Error::param("distances", "a sweep needs at least two distances"));
    }
    for &d in distances {
        check_distance(d)?;
    }
    let (w, h) = holo.dims();
    for r in regions {
        r.check(w, h)?;
    }
    let field = &holo.channels[FOCUS_CHANNEL];
    let prop = Propagator::for_field(field, kernel);
    let mut spectrum = field.data().to_vec();
    prop.forward(&mut spectrum);

    let per_distance: Vec<Vec<f64>> = distances
        .par_iter()
        .map(|&d| {
            let mut data: Vec<Complex64> = spectrum.clone();
            prop.apply_transfer(&mut data, d);
            prop.inverse(&mut data);
            let intensity: Vec<f64> = data.iter().map(|c| c.norm_sqr()).collect();
            regions
                .iter()
                .map(|r| tenengrad(&intensity, w, h, r))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let scores: Vec<Vec<f64>> = (0..regions.len())
        .map(|ri| per_distance.iter().map(|row| row[ri]).collect())
        .collect();
    let best = scores
        .iter()
        .map(|curve| {
            curve
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc })
                .0
        })
        .collect();
    Ok(FocusSweep {
        distances: distances.to_vec(),
        regions: regions.to_vec(),
        scores,
        best,
    })
}
