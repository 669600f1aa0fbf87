//! Lee's four-coefficient decomposition of complex fields for
//! amplitude-only modulators, plus 8-bit SLM raster layout.

mod encode;
mod slm;

pub use encode::{lee_decode, lee_encode, LeeCgh, LEE_PHASES};
pub use slm::{embed_to_slm, save_slm_rasters, SlmLayout, SlmRaster, SlmSidecar, SlmSpec, CELLS_PER_PIXEL};
