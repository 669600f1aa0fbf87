use serde::{Deserialize, Serialize};

use super::{SceneConfig, Vec3};
use crate::error::{Error, Result};
use crate::imagecore::ViewManifest;

/// Pinhole camera. Image x runs along `right`, image rows run down `up`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Camera {
    pub position: Vec3,
    pub look_at: Vec3,
    pub up: Vec3,
    pub vertical_fov: f64,
}

impl Camera {
    pub fn forward(&self) -> Vec3 {
        (self.look_at - self.position).normalized()
    }

    /// Orthonormal `(right, up, forward)` frame.
    pub fn basis(&self) -> (Vec3, Vec3, Vec3) {
        let forward = self.forward();
        let right = forward.cross(self.up).normalized();
        let up = right.cross(forward);
        (right, up, forward)
    }

    /// Direction through the center of pixel `(px, py)`, scaled so its
    /// component along the optical axis is exactly 1. The ray parameter of a
    /// hit is therefore its optical-axis depth.
    pub fn pixel_direction(&self, px: usize, py: usize, width: usize, height: usize) -> Vec3 {
        let (right, up, forward) = self.basis();
        let tan_half = (self.vertical_fov.to_radians() / 2.0).tan();
        let aspect = width as f64 / height as f64;
        let sx = (2.0 * (px as f64 + 0.5) / width as f64 - 1.0) * tan_half * aspect;
        let sy = (1.0 - 2.0 * (py as f64 + 0.5) / height as f64) * tan_half;
        forward + right * sx + up * sy
    }
}

/// Camera for view `index`: on the orbit of radius `camera_radius` in the
/// y = 0 plane at azimuth `index × 360 / view_count`, looking at the origin.
pub fn camera_at(config: &SceneConfig, index: usize) -> Result<Camera> {
    if index >= config.view_count {
        return Err(Error::IndexOutOfRange {
            index,
            count: config.view_count,
        });
    }
    let theta = ViewManifest::azimuth_of(index, config.view_count).to_radians();
    let r = config.camera_radius;
    Ok(Camera {
        position: Vec3::new(r * theta.sin(), 0.0, r * theta.cos()),
        look_at: Vec3::ZERO,
        up: Vec3::Y,
        vertical_fov: config.vertical_fov,
    })
}
