use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const FIELD_MAGIC: [u8; 4] = *b"CFLD";
pub const FIELD_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 3 * 4 + 2 * 8;

/// Sampled scalar light field: row-major complex amplitudes on a square
/// pixel grid of physical `pitch`, monochromatic at `wavelength`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField {
    width: usize,
    height: usize,
    pitch: f64,
    wavelength: f64,
    data: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(width: usize, height: usize, pitch: f64, wavelength: f64, data: Vec<Complex64>) -> Result<Self> {
        if width == 0 || height == 0 || width > u32::MAX as usize || height > u32::MAX as usize {
            return Err(Error::InvalidDimensions { width, height });
        }
        if !(pitch > 0.0 && pitch.is_finite()) {
            return Err(Error::param("pitch", format!("must be positive, got {pitch}")));
        }
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(Error::param("wavelength", format!("must be positive, got {wavelength}")));
        }
        if data.len() != width * height {
            return Err(Error::SizeMismatch {
                expected: width * height,
                found: data.len(),
                unit: "samples",
            });
        }
        Ok(Self {
            width,
            height,
            pitch,
            wavelength,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize, pitch: f64, wavelength: f64) -> Result<Self> {
        Self::new(width, height, pitch, wavelength, vec![Complex64::new(0.0, 0.0); width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    /// Same grid and wavelength, new samples.
    pub(crate) fn with_data(&self, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), self.data.len());
        Self {
            width: self.width,
            height: self.height,
            pitch: self.pitch,
            wavelength: self.wavelength,
            data,
        }
    }

    /// Σ|u|² over all samples.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.data.iter().map(|c| c.norm_sqr()).collect()
    }
}

pub fn write_field<W: Write>(field: &ComplexField, mut w: W) -> std::io::Result<()> {
    w.write_all(&FIELD_MAGIC)?;
    w.write_all(&FIELD_VERSION.to_le_bytes())?;
    w.write_all(&(field.width as u32).to_le_bytes())?;
    w.write_all(&(field.height as u32).to_le_bytes())?;
    w.write_all(&field.pitch.to_le_bytes())?;
    w.write_all(&field.wavelength.to_le_bytes())?;
    for c in &field.data {
        w.write_all(&c.re.to_le_bytes())?;
        w.write_all(&c.im.to_le_bytes())?;
    }
    w.flush()
}

/// Parses a complete CFLD byte stream.
pub fn read_field<R: Read>(mut r: R) -> Result<ComplexField> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)
        .map_err(|e| Error::io("<stream>", e))?;
    parse_field(&bytes)
}

fn parse_field(bytes: &[u8]) -> Result<ComplexField> {
    if bytes.len() < 4 {
        let mut found = [0u8; 4];
        found[..bytes.len()].copy_from_slice(bytes);
        return Err(Error::BadMagic { found });
    }
    let magic: [u8; 4] = bytes[..4].try_into().unwrap();
    if magic != FIELD_MAGIC {
        return Err(Error::BadMagic { found: magic });
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::SizeMismatch {
            expected: HEADER_LEN,
            found: bytes.len(),
            unit: "header bytes",
        });
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != FIELD_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let width = u32_at(8) as usize;
    let height = u32_at(12) as usize;
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    let pitch = f64_at(16);
    let wavelength = f64_at(24);
    let payload = &bytes[HEADER_LEN..];
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(16))
        .ok_or(Error::InvalidDimensions { width, height })?;
    if payload.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: payload.len(),
            unit: "payload bytes",
        });
    }
    let data = payload
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    ComplexField::new(width, height, pitch, wavelength, data)
}

pub fn save_field(field: &ComplexField, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_field(field, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn load_field(path: impl AsRef<Path>) -> Result<ComplexField> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|f| BufReader::new(f).read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    parse_field(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_field() -> ComplexField {
        let data = (0..12)
            .map(|i| Complex64::new(i as f64 * 0.25 - 1.0, -(i as f64).sqrt()))
            .collect();
        ComplexField::new(4, 3, 2.16e-5, 638e-9, data).unwrap()
    }

    fn encoded(field: &ComplexField) -> Vec<u8> {
        let mut buf = Vec::new();
        write_field(field, &mut buf).unwrap();
        buf
    }

    #[test]
    fn roundtrip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let f = sample_field();
        let p = dir.path().join("f.cfld");
        save_field(&f, &p).unwrap();
        let back = load_field(&p).unwrap();
        assert_eq!(encoded(&back), encoded(&f));
        assert_eq!(back, f);
    }

    #[test]
    fn header_layout() {
        let buf = encoded(&sample_field());
        assert_eq!(&buf[..4], b"CFLD");
        assert_eq!(u32::from_le_bytes(buf[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 4);
        assert_eq!(u32::from_le_bytes(buf[12..16].try_into().unwrap()), 3);
        assert_eq!(f64::from_le_bytes(buf[16..24].try_into().unwrap()), 2.16e-5);
        assert_eq!(f64::from_le_bytes(buf[24..32].try_into().unwrap()), 638e-9);
        assert_eq!(buf.len(), 32 + 12 * 16);
        // first sample: (-1.0, -0.0)
        assert_eq!(f64::from_le_bytes(buf[32..40].try_into().unwrap()), -1.0);
    }

    #[test]
    fn truncated_payload_is_size_mismatch() {
        let mut buf = encoded(&sample_field());
        buf.truncate(buf.len() - 3);
        let err = read_field(buf.as_slice()).unwrap_err();
        assert!(err.to_string().contains("size mismatch"), "{err}");
    }

    #[test]
    fn zero_width_is_invalid_dimensions() {
        let mut buf = encoded(&sample_field());
        buf[8..12].copy_from_slice(&0u32.to_le_bytes());
        let err = read_field(buf.as_slice()).unwrap_err();
        assert!(err.to_string().contains("invalid dimensions"), "{err}");
    }

    #[test]
    fn bad_magic_and_version() {
        let mut buf = encoded(&sample_field());
        buf[0] = b'X';
        assert!(matches!(read_field(buf.as_slice()), Err(Error::BadMagic { .. })));
        let mut buf = encoded(&sample_field());
        buf[4] = 2;
        assert!(matches!(read_field(buf.as_slice()), Err(Error::UnsupportedVersion(2))));
        assert!(matches!(read_field(&b"CF"[..]), Err(Error::BadMagic { .. })));
    }

    #[test]
    fn constructor_rejects_bad_metadata() {
        assert!(ComplexField::zeros(2, 2, 0.0, 1e-6).is_err());
        assert!(ComplexField::zeros(2, 2, 1e-6, -1.0).is_err());
        assert!(ComplexField::new(2, 2, 1e-6, 1e-6, vec![]).is_err());
    }
}
