use super::depth::acc;
use crate::error::{Error, Result};
use crate::leecode::{LeeCgh, SlmRaster};

/// Per-color brightness of a hologram raster, the quantity compared by the
/// colour CGH ACC.
pub trait CghBrightness {
    fn dims(&self) -> (usize, usize);
    /// Brightness samples of color `channel` (0 = R, 1 = G, 2 = B).
    fn brightness(&self, channel: usize) -> Vec<f64>;
}

/// Encoded 8-bit Lee coefficients: all four quantized planes of a color.
impl CghBrightness for [LeeCgh; 3] {
    fn dims(&self) -> (usize, usize) {
        self[0].dims()
    }

    fn brightness(&self, channel: usize) -> Vec<f64> {
        self[channel]
            .quantized()
            .iter()
            .flat_map(|plane| plane.iter().map(|&q| f64::from(q)))
            .collect()
    }
}

impl CghBrightness for [SlmRaster; 3] {
    fn dims(&self) -> (usize, usize) {
        (self[0].width, self[0].height)
    }

    fn brightness(&self, channel: usize) -> Vec<f64> {
        self[channel].data.iter().map(|&q| f64::from(q)).collect()
    }
}

/// Real-valued (pre-quantization) per-color planes.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCgh {
    pub width: usize,
    pub height: usize,
    pub channels: [Vec<f64>; 3],
}

impl RealCgh {
    /// Unquantized Lee coefficients of each color.
    pub fn from_lee(cghs: &[LeeCgh; 3]) -> Self {
        let (width, height) = cghs[0].dims();
        let channels = std::array::from_fn(|c| cghs[c].coeffs().iter().flatten().copied().collect());
        Self { width, height, channels }
    }
}

impl CghBrightness for RealCgh {
    fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    fn brightness(&self, channel: usize) -> Vec<f64> {
        self.channels[channel].clone()
    }
}

fn check<T: CghBrightness + ?Sized>(c: &T, c_ref: &T) -> Result<()> {
    if c.dims() != c_ref.dims() {
        return Err(Error::dims(c.dims(), c_ref.dims()));
    }
    Ok(())
}

/// `Σ_{r,g,b} I·I′ / √(Σ_{r,g,b} I² · Σ_{r,g,b} I′²)`, summed over every
/// sample of all three colors jointly (R, then G, then B).
pub fn acc_cgh<T: CghBrightness + ?Sized>(c: &T, c_ref: &T) -> Result<f64> {
    check(c, c_ref)?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for ch in 0..3 {
        a.extend(c.brightness(ch));
        b.extend(c_ref.brightness(ch));
    }
    acc(&a, &b).map_err(|e| match e {
        Error::ZeroInput(_) => Error::ZeroInput("acc_cgh"),
        other => other,
    })
}

/// The same score restricted to one color.
pub fn acc_cgh_channel<T: CghBrightness + ?Sized>(c: &T, c_ref: &T, channel: usize) -> Result<f64> {
    check(c, c_ref)?;
    acc(&c.brightness(channel), &c_ref.brightness(channel)).map_err(|e| match e {
        Error::ZeroInput(_) => Error::ZeroInput("acc_cgh"),
        other => other,
    })
}
