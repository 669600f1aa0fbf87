use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::imagecore::ComplexField;

/// Phase angle carried by coefficient `k`: 0, π/2, π, 3π/2.
pub const LEE_PHASES: [f64; 4] = [0.0, FRAC_PI_2, 2.0 * FRAC_PI_2, 3.0 * FRAC_PI_2];

/// Lee decomposition `H = L₁ + i·L₂ − L₃ − i·L₄` of one complex field.
///
/// Every coefficient is nonnegative and at most two per pixel are nonzero.
/// `quantized` holds `round(L·255/scale)` with `scale` the largest
/// coefficient of the whole hologram.
#[derive(Clone, Debug, PartialEq)]
pub struct LeeCgh {
    width: usize,
    height: usize,
    pitch: f64,
    wavelength: f64,
    coeffs: [Vec<f64>; 4],
    quantized: [Vec<u8>; 4],
    scale: f64,
}

impl LeeCgh {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn coeffs(&self) -> &[Vec<f64>; 4] {
        &self.coeffs
    }

    pub fn quantized(&self) -> &[Vec<u8>; 4] {
        &self.quantized
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Coefficients of pixel `i`.
    pub fn pixel(&self, i: usize) -> [f64; 4] {
        [self.coeffs[0][i], self.coeffs[1][i], self.coeffs[2][i], self.coeffs[3][i]]
    }

    /// Decodes after re-quantizing every coefficient to `2^bits − 1` levels
    /// of the same scale. Simulates deeper (or shallower) panels than 8 bits.
    pub fn decode_at_bit_depth(&self, bits: u32) -> ComplexField {
        assert!((1..=52).contains(&bits), "bit depth {bits} out of range");
        let levels = ((1u64 << bits) - 1) as f64;
        let (scale, unit) = (self.scale, self.scale / levels);
        let q = |c: f64| if scale > 0.0 { (c * levels / scale).round() * unit } else { 0.0 };
        self.assemble(|k, i| q(self.coeffs[k][i]))
    }

    fn assemble(&self, coeff: impl Fn(usize, usize) -> f64) -> ComplexField {
        let data = (0..self.width * self.height)
            .map(|i| Complex64::new(coeff(0, i) - coeff(2, i), coeff(1, i) - coeff(3, i)))
            .collect();
        ComplexField::new(self.width, self.height, self.pitch, self.wavelength, data)
            .expect("dimensions were validated by the source field")
    }
}

/// The two nonzero coefficients sit at the phase angles bracketing the
/// sample's phase. On an axis (θ = q·π/2) the whole amplitude goes to the
/// lower quadrant's cosine coefficient.
fn decompose(h: Complex64) -> [f64; 4] {
    let (re, im) = (h.re, h.im);
    // `+ 0.0` turns a negated +0 into +0.
    if re > 0.0 && im >= 0.0 {
        [re, im + 0.0, 0.0, 0.0]
    } else if re <= 0.0 && im > 0.0 {
        [0.0, im, -re + 0.0, 0.0]
    } else if re < 0.0 && im <= 0.0 {
        [0.0, 0.0, -re, -im + 0.0]
    } else if re >= 0.0 && im < 0.0 {
        [re + 0.0, 0.0, 0.0, -im]
    } else {
        // Zero (or NaN, which maps to zero amplitude).
        [0.0; 4]
    }
}

pub fn lee_encode(field: &ComplexField) -> LeeCgh {
    let n = field.data().len();
    let mut coeffs: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
    let mut scale = 0.0f64;
    for &h in field.data() {
        let c = decompose(h);
        for k in 0..4 {
            scale = scale.max(c[k]);
            coeffs[k].push(c[k]);
        }
    }
    let quantized = std::array::from_fn(|k| {
        coeffs[k]
            .iter()
            .map(|&c| if scale > 0.0 { (c * 255.0 / scale).round() as u8 } else { 0 })
            .collect()
    });
    LeeCgh {
        width: field.width(),
        height: field.height(),
        pitch: field.pitch(),
        wavelength: field.wavelength(),
        coeffs,
        quantized,
        scale,
    }
}

/// `Σ L_k·e^{i·k·π/2}` from either the exact or the 8-bit coefficients.
pub fn lee_decode(cgh: &LeeCgh, quantized: bool) -> ComplexField {
    if quantized {
        let unit = cgh.scale / 255.0;
        cgh.assemble(|k, i| f64::from(cgh.quantized[k][i]) * unit)
    } else {
        cgh.assemble(|k, i| cgh.coeffs[k][i])
    }
}
