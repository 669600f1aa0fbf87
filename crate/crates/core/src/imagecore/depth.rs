use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Metric extent of the 8-bit depth encoding: gray 255 sits at `near`,
/// gray 0 at `far`, linear in between.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthRange {
    pub near: f64,
    pub far: f64,
}

impl DepthRange {
    /// 11 cm to 28.7 cm, the near and far endpoints of the capture rig.
    pub const ENDPOINTS: DepthRange = DepthRange { near: 0.11, far: 0.287 };

    /// 11 cm near plane with the rig's nominal 14.2 cm span (far = 25.2 cm).
    /// The rig's endpoints and span disagree; `ENDPOINTS` is the default.
    pub const NOMINAL_SPAN: DepthRange = DepthRange { near: 0.11, far: 0.11 + 0.142 };

    pub fn new(near: f64, far: f64) -> Result<Self> {
        let range = DepthRange { near, far };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.near.is_finite() && self.far.is_finite() && 0.0 < self.near && self.near < self.far) {
            return Err(Error::param(
                "near/far",
                format!("need 0 < near < far, got near={} far={}", self.near, self.far),
            ));
        }
        Ok(())
    }

    pub fn span(&self) -> f64 {
        self.far - self.near
    }

    /// Size of one gray step in meters.
    pub fn quantum(&self) -> f64 {
        self.span() / 255.0
    }
}

impl Default for DepthRange {
    fn default() -> Self {
        Self::ENDPOINTS
    }
}

pub fn depth_gray_to_distance(gray: u8, range: &DepthRange) -> f64 {
    gray_level_to_distance(f64::from(gray), range)
}

/// Real-valued gray level (e.g. a layer's bin center) to meters.
pub fn gray_level_to_distance(gray: f64, range: &DepthRange) -> f64 {
    range.far - (gray / 255.0) * range.span()
}

/// Inverse of [`depth_gray_to_distance`], rounded and clamped to 0..=255.
pub fn distance_to_gray(distance: f64, range: &DepthRange) -> u8 {
    let g = (255.0 * (range.far - distance) / range.span()).round();
    g.clamp(0.0, 255.0) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_match_rig_table() {
        let r = DepthRange::default();
        assert!((depth_gray_to_distance(255, &r) - 0.110).abs() < 1e-15);
        assert!((depth_gray_to_distance(0, &r) - 0.287).abs() < 1e-15);
        // 0.287 - (128/255) * 0.177
        assert!((depth_gray_to_distance(128, &r) - 0.198_152_941_176_470_6).abs() < 1e-12);
    }

    #[test]
    fn strictly_decreasing_and_invertible() {
        for r in [DepthRange::ENDPOINTS, DepthRange::NOMINAL_SPAN] {
            let mut prev = f64::INFINITY;
            for g in 0..=255u8 {
                let d = depth_gray_to_distance(g, &r);
                assert!(d < prev);
                prev = d;
                assert_eq!(distance_to_gray(d, &r), g);
            }
        }
    }

    #[test]
    fn affine_in_gray() {
        let r = DepthRange::default();
        let step = depth_gray_to_distance(1, &r) - depth_gray_to_distance(0, &r);
        for g in 1..=255u8 {
            let s = depth_gray_to_distance(g, &r) - depth_gray_to_distance(g - 1, &r);
            assert!((s - step).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_inverted_range() {
        assert!(DepthRange::new(0.3, 0.2).is_err());
        assert!(DepthRange::new(0.0, 0.2).is_err());
        assert!((DepthRange::NOMINAL_SPAN.far - 0.252).abs() < 1e-12);
    }
}
