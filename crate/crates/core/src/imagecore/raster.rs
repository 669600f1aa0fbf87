use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use image::{ColorType, DynamicImage, ImageEncoder, ImageReader};

use crate::error::{Error, Result};

/// 8-bit RGB raster, row-major `(R, G, B)` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height * 3 {
            return Err(Error::SizeMismatch {
                expected: width * height * 3,
                found: data.len(),
                unit: "bytes",
            });
        }
        Ok(Self { width, height, data })
    }

    pub fn black(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![0; width * height * 3])
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

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    /// One color plane (0 = R, 1 = G, 2 = B) as a row-major vector.
    pub fn channel(&self, c: usize) -> Vec<u8> {
        self.data.iter().skip(c).step_by(3).copied().collect()
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }
}

/// 8-bit depth raster. Gray 255 is the nearest plane, 0 the farthest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthMap {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl DepthMap {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height {
            return Err(Error::SizeMismatch {
                expected: width * height,
                found: data.len(),
                unit: "bytes",
            });
        }
        Ok(Self { width, height, data })
    }

    pub fn filled(width: usize, height: usize, gray: u8) -> Result<Self> {
        Self::new(width, height, vec![gray; width * height])
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

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 || width > u32::MAX as usize || height > u32::MAX as usize {
        return Err(Error::InvalidDimensions { width, height });
    }
    Ok(())
}

fn open_image(path: &Path) -> Result<DynamicImage> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    ImageReader::with_format(BufReader::new(file), image::ImageFormat::Png)
        .decode()
        .map_err(|e| match e {
            image::ImageError::IoError(io) => Error::io(path, io),
            other => Error::MalformedImage {
                path: path.to_path_buf(),
                reason: other.to_string(),
            },
        })
}

pub fn load_rgb(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let img = open_image(path)?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data = match img {
        DynamicImage::ImageRgb8(buf) => buf.into_raw(),
        DynamicImage::ImageLuma8(buf) => buf.into_raw().into_iter().flat_map(|g| [g, g, g]).collect(),
        other => {
            return Err(Error::ChannelLayout {
                path: path.to_path_buf(),
                reason: format!("expected 8-bit RGB, found {:?}", other.color()),
            })
        }
    };
    RgbImage::new(w, h, data)
}

/// Loads a single-channel depth PNG. Three-channel files are accepted only
/// when every pixel has R = G = B.
pub fn load_depth(path: impl AsRef<Path>) -> Result<DepthMap> {
    let path = path.as_ref();
    let img = open_image(path)?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data = match img {
        DynamicImage::ImageLuma8(buf) => buf.into_raw(),
        DynamicImage::ImageRgb8(buf) => {
            let raw = buf.into_raw();
            let mut gray = Vec::with_capacity(w * h);
            for (i, px) in raw.chunks_exact(3).enumerate() {
                if px[0] != px[1] || px[1] != px[2] {
                    return Err(Error::ChannelLayout {
                        path: path.to_path_buf(),
                        reason: format!(
                            "depth pixel ({}, {}) is not gray: {:?}",
                            i % w,
                            i / w,
                            px
                        ),
                    });
                }
                gray.push(px[0]);
            }
            gray
        }
        other => {
            return Err(Error::ChannelLayout {
                path: path.to_path_buf(),
                reason: format!("expected 8-bit gray, found {:?}", other.color()),
            })
        }
    };
    DepthMap::new(w, h, data)
}

fn write_png(path: &Path, data: &[u8], width: usize, height: usize, color: ColorType) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let encoder = image::codecs::png::PngEncoder::new(BufWriter::new(file));
    encoder
        .write_image(data, width as u32, height as u32, color.into())
        .map_err(|e| match e {
            image::ImageError::IoError(io) => Error::io(path, io),
            other => Error::MalformedImage {
                path: path.to_path_buf(),
                reason: other.to_string(),
            },
        })
}

pub fn save_rgb(img: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    write_png(path.as_ref(), &img.data, img.width, img.height, ColorType::Rgb8)
}

pub fn save_depth(depth: &DepthMap, path: impl AsRef<Path>) -> Result<()> {
    write_png(path.as_ref(), &depth.data, depth.width, depth.height, ColorType::L8)
}

/// Writes any 8-bit gray plane as PNG (SLM rasters, intensity previews).
pub(crate) fn save_gray_plane(data: &[u8], width: usize, height: usize, path: &Path) -> Result<()> {
    write_png(path, data, width, height, ColorType::L8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp_rgb(w: usize, h: usize) -> RgbImage {
        let data = (0..w * h * 3).map(|i| (i * 37 % 256) as u8).collect();
        RgbImage::new(w, h, data).unwrap()
    }

    #[test]
    fn rgb_roundtrip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let img = ramp_rgb(640, 360);
        let p = dir.path().join("v.png");
        save_rgb(&img, &p).unwrap();
        let back = load_rgb(&p).unwrap();
        assert_eq!(back.dims(), (640, 360));
        assert_eq!(back, img);
    }

    #[test]
    fn depth_roundtrip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let data = (0..31 * 17).map(|i| (i % 256) as u8).collect();
        let d = DepthMap::new(31, 17, data).unwrap();
        let p = dir.path().join("d.png");
        save_depth(&d, &p).unwrap();
        assert_eq!(load_depth(&p).unwrap(), d);
    }

    #[test]
    fn gray_rgb_file_loads_as_depth() {
        let dir = tempfile::tempdir().unwrap();
        let img = RgbImage::new(2, 1, vec![7, 7, 7, 200, 200, 200]).unwrap();
        let p = dir.path().join("g.png");
        save_rgb(&img, &p).unwrap();
        assert_eq!(load_depth(&p).unwrap().data(), &[7, 200]);
    }

    #[test]
    fn colored_rgb_file_is_rejected_as_depth() {
        let dir = tempfile::tempdir().unwrap();
        let img = RgbImage::new(2, 1, vec![7, 7, 7, 200, 199, 200]).unwrap();
        let p = dir.path().join("c.png");
        save_rgb(&img, &p).unwrap();
        assert!(matches!(load_depth(&p), Err(Error::ChannelLayout { .. })));
    }

    #[test]
    fn missing_and_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_rgb(dir.path().join("nope.png")), Err(Error::Io { .. })));
        let p = dir.path().join("junk.png");
        std::fs::write(&p, b"definitely not a png").unwrap();
        assert!(matches!(load_depth(&p), Err(Error::MalformedImage { .. })));
    }

    #[test]
    fn constructors_enforce_lengths() {
        assert!(RgbImage::new(2, 2, vec![0; 11]).is_err());
        assert!(DepthMap::new(0, 2, vec![]).is_err());
        assert!(DepthMap::new(2, 2, vec![0; 4]).is_ok());
    }
}
