use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imagecore::{DepthRange, ObjectShape};

/// Scene and camera geometry. Defaults reproduce the capture rig: 20 cm
/// orbit, 8.3 cm between object centers, depth planes at 11 cm and 28.7 cm,
/// 1024 views of 640×360.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SceneConfig {
    pub shape: ObjectShape,
    pub camera_radius: f64,
    pub object_separation: f64,
    pub near: f64,
    pub far: f64,
    /// Clearance between the near depth plane and the objects. Recorded with
    /// the dataset; the renderer does not enforce it.
    pub margin: f64,
    /// Bounding-sphere radius shared by every primitive.
    pub object_radius: f64,
    pub view_count: usize,
    pub width: usize,
    pub height: usize,
    pub seed: u64,
    pub vertical_fov: f64,
}

impl Default for SceneConfig {
    fn default() -> Self {
        Self {
            shape: ObjectShape::Torus,
            camera_radius: 0.20,
            object_separation: 0.083,
            near: DepthRange::ENDPOINTS.near,
            far: DepthRange::ENDPOINTS.far,
            margin: 0.02,
            object_radius: 0.03,
            view_count: 1024,
            width: 640,
            height: 360,
            seed: 0,
            vertical_fov: 45.0,
        }
    }
}

impl SceneConfig {
    pub fn with_shape(shape: ObjectShape) -> Self {
        Self {
            shape,
            ..Self::default()
        }
    }

    pub fn depth_range(&self) -> DepthRange {
        DepthRange {
            near: self.near,
            far: self.far,
        }
    }

    /// Switches to the rig's nominal 14.2 cm depth span instead of its endpoints.
    pub fn use_nominal_span(&mut self) {
        self.near = DepthRange::NOMINAL_SPAN.near;
        self.far = DepthRange::NOMINAL_SPAN.far;
    }

    pub fn validate(&self) -> Result<()> {
        self.depth_range().validate()?;
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be positive, got {v}")))
            }
        };
        positive("camera_radius", self.camera_radius)?;
        positive("object_radius", self.object_radius)?;
        if !(self.object_separation >= 0.0 && self.object_separation.is_finite()) {
            return Err(Error::param("object_separation", "must be >= 0"));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(Error::param("margin", "must be >= 0"));
        }
        if self.camera_radius <= self.object_separation / 2.0 + self.object_radius {
            return Err(Error::param(
                "camera_radius",
                format!(
                    "camera at {} m would sit inside an object (separation/2 + radius = {} m)",
                    self.camera_radius,
                    self.object_separation / 2.0 + self.object_radius
                ),
            ));
        }
        if self.view_count == 0 {
            return Err(Error::param("view_count", "must be at least 1"));
        }
        if self.width == 0 || self.height == 0 || self.width > u32::MAX as usize || self.height > u32::MAX as usize {
            return Err(Error::param("width/height", format!("invalid size {}x{}", self.width, self.height)));
        }
        if !(self.vertical_fov > 0.0 && self.vertical_fov < 180.0) {
            return Err(Error::param("vertical_fov", format!("must be in (0, 180), got {}", self.vertical_fov)));
        }
        Ok(())
    }
}
