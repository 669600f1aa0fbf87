//! Built-in replacement for the capture rig: a ray tracer that renders two
//! identical primitives from a camera orbiting the y-axis, producing RGB views
//! and exact optical-axis depth maps.

mod camera;
mod config;
mod dataset;
mod geometry;
mod primitives;
mod render;

pub use camera::{camera_at, Camera};
pub use config::SceneConfig;
pub use dataset::{generate_dataset, interleaved_split, view_file_names, MANIFEST_FILE};
pub use geometry::Vec3;
pub use primitives::{Hit, Primitive};
pub use render::{object_centers, render_view, render_view_detailed, RenderedView};
