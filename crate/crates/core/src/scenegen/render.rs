use super::{camera_at, Primitive, SceneConfig, Vec3};
use crate::error::Result;
use crate::imagecore::{DepthMap, ObjectShape, RgbImage};

/// Light direction in camera coordinates (right, up, toward-camera): a
/// headlight slightly above and left of the lens, so shading rotates with the
/// camera.
const LIGHT_CAMERA: (f64, f64, f64) = (-0.35, 0.45, 1.0);
const AMBIENT: f64 = 0.15;

fn albedo(shape: ObjectShape) -> [f64; 3] {
    match shape {
        ObjectShape::Torus => [0.90, 0.47, 0.24],
        ObjectShape::Cube => [0.27, 0.63, 0.86],
        ObjectShape::Cone => [0.47, 0.78, 0.35],
        ObjectShape::Sphere => [0.86, 0.78, 0.31],
    }
}

/// Full render output. `object_id` is 0 for background and `1 + k` for the
/// k-th entry of [`object_centers`]; `z_cam` is the exact optical-axis depth
/// in meters (NaN where no object was hit).
#[derive(Clone, Debug)]
pub struct RenderedView {
    pub rgb: RgbImage,
    pub depth: DepthMap,
    pub object_id: Vec<u8>,
    pub z_cam: Vec<f64>,
}

/// Object centers on the x-axis at ∓separation/2.
pub fn object_centers(config: &SceneConfig) -> [Vec3; 2] {
    let h = config.object_separation / 2.0;
    [Vec3::new(-h, 0.0, 0.0), Vec3::new(h, 0.0, 0.0)]
}

pub fn render_view(config: &SceneConfig, index: usize) -> Result<(RgbImage, DepthMap)> {
    let v = render_view_detailed(config, index)?;
    Ok((v.rgb, v.depth))
}

pub fn render_view_detailed(config: &SceneConfig, index: usize) -> Result<RenderedView> {
    config.validate()?;
    let camera = camera_at(config, index)?;
    let (right, up, forward) = camera.basis();
    let light = (right * LIGHT_CAMERA.0 + up * LIGHT_CAMERA.1 - forward * LIGHT_CAMERA.2).normalized();
    let primitive = Primitive::new(config.shape, config.object_radius);
    let centers = object_centers(config);
    let color = albedo(config.shape);
    let range = config.depth_range();

    let (w, h) = (config.width, config.height);
    let mut rgb = vec![0u8; w * h * 3];
    let mut depth = vec![0u8; w * h];
    let mut object_id = vec![0u8; w * h];
    let mut z_cam = vec![f64::NAN; w * h];

    for py in 0..h {
        for px in 0..w {
            let dir = camera.pixel_direction(px, py, w, h);
            let mut nearest: Option<(usize, super::Hit)> = None;
            for (k, c) in centers.iter().enumerate() {
                if let Some(hit) = primitive.intersect(camera.position - *c, dir, 0.0) {
                    if nearest.is_none_or(|(_, n)| hit.t < n.t) {
                        nearest = Some((k, hit));
                    }
                }
            }
            let Some((k, hit)) = nearest else { continue };
            let i = py * w + px;
            // `dir` has unit axial component, so t is the optical-axis depth.
            let z = hit.t;
            z_cam[i] = z;
            object_id[i] = k as u8 + 1;
            let g = (255.0 * (range.far - z) / range.span()).round();
            depth[i] = g.clamp(0.0, 255.0) as u8;
            let shade = AMBIENT + (1.0 - AMBIENT) * hit.normal.dot(light).max(0.0);
            for ch in 0..3 {
                rgb[i * 3 + ch] = (255.0 * color[ch] * shade).round().clamp(0.0, 255.0) as u8;
            }
        }
    }

    Ok(RenderedView {
        rgb: RgbImage::new(w, h, rgb)?,
        depth: DepthMap::new(w, h, depth)?,
        object_id,
        z_cam,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imagecore::depth_gray_to_distance;

    fn small(shape: ObjectShape) -> SceneConfig {
        SceneConfig {
            shape,
            width: 160,
            height: 90,
            view_count: 64,
            ..SceneConfig::default()
        }
    }

    #[test]
    fn background_is_far_plane() {
        for s in ObjectShape::ALL {
            let v = render_view_detailed(&small(s), 5).unwrap();
            for (i, &id) in v.object_id.iter().enumerate() {
                if id == 0 {
                    assert_eq!(v.depth.data()[i], 0);
                    assert_eq!(&v.rgb.data()[i * 3..i * 3 + 3], &[0, 0, 0]);
                }
            }
        }
    }

    #[test]
    fn quantized_depth_tracks_true_depth() {
        for s in ObjectShape::ALL {
            let cfg = small(s);
            let range = cfg.depth_range();
            let v = render_view_detailed(&cfg, 3).unwrap();
            let mut hits = 0;
            for (i, &z) in v.z_cam.iter().enumerate() {
                if z.is_nan() {
                    continue;
                }
                hits += 1;
                let err = (depth_gray_to_distance(v.depth.data()[i], &range) - z).abs();
                assert!(err <= range.quantum() / 2.0 + 1e-12, "{s}: {err}");
            }
            assert!(hits > 0, "{s}");
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let cfg = small(ObjectShape::Torus);
        let a = render_view(&cfg, 9).unwrap();
        let b = render_view(&cfg, 9).unwrap();
        assert_eq!(a, b);
    }
}
