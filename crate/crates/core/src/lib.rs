//! Holographic content pipeline.
//!
//! Renders 360° multi-view RGB-D datasets of simple primitives, scores depth
//! maps against ground truth, synthesizes layer-based FFT holograms from
//! RGB + depth pairs, encodes them for an amplitude SLM with Lee's
//! four-coefficient scheme and reconstructs them numerically at chosen
//! focal planes.

pub mod cgh;
pub mod error;
pub mod imagecore;
pub mod leecode;
pub mod metrics;
pub mod recon;
pub mod scenegen;

pub use error::{Error, Result};
