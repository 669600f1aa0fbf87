//! Shared raster, field and manifest types plus their on-disk formats.

mod depth;
mod field;
mod manifest;
pub(crate) mod raster;

pub use depth::{depth_gray_to_distance, distance_to_gray, gray_level_to_distance, DepthRange};
pub use field::{load_field, read_field, save_field, write_field, ComplexField, FIELD_MAGIC, FIELD_VERSION};
pub use manifest::{ManifestEntry, ObjectShape, SplitTag, ViewManifest};
pub use raster::{load_depth, load_rgb, save_depth, save_rgb, DepthMap, RgbImage};
