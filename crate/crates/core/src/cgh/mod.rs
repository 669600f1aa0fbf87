//! Layer-based FFT hologram synthesis from RGB + depth pairs.

mod propagate;
mod synth;

pub use propagate::{propagate, propagate_with, Kernel, Propagator};
pub use synth::{
    layer_center_gray, layer_fields, layer_index, synthesize, Hologram, Layer, PhaseMode, SynthesisConfig,
    CHANNEL_SUFFIXES, MAX_LAYERS,
};
