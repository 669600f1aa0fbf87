use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::imagecore::DepthMap;

pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;
const PEAK: f64 = 255.0;

fn check_same(a: &DepthMap, b: &DepthMap) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::dims(a.dims(), b.dims()));
    }
    Ok(())
}

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::dims((a.len(), 1), (b.len(), 1)));
    }
    if a.is_empty() {
        return Err(Error::InvalidDimensions { width: 0, height: 1 });
    }
    Ok(())
}

fn as_f64(d: &DepthMap) -> Vec<f64> {
    d.data().iter().map(|&g| f64::from(g)).collect()
}

fn normalized(d: &DepthMap) -> Vec<f64> {
    d.data().iter().map(|&g| f64::from(g) / PEAK).collect()
}

pub fn mse_values(y: &[f64], y_ref: &[f64]) -> Result<f64> {
    check_len(y, y_ref)?;
    let sum: f64 = y.iter().zip(y_ref).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(sum / y.len() as f64)
}

/// Mean squared gray-level difference on the 0–255 scale.
pub fn mse(y: &DepthMap, y_ref: &DepthMap) -> Result<f64> {
    check_same(y, y_ref)?;
    mse_values(&as_f64(y), &as_f64(y_ref))
}

/// Whole-image SSIM with population statistics and stabilizers
/// `c1 = (k1·L)²`, `c2 = (k2·L)²`.
pub fn ssim_values(y: &[f64], y_ref: &[f64], dynamic_range: f64) -> Result<f64> {
    check_len(y, y_ref)?;
    let n = y.len() as f64;
    let mu_y = y.iter().sum::<f64>() / n;
    let mu_r = y_ref.iter().sum::<f64>() / n;
    let (mut var_y, mut var_r, mut cov) = (0.0, 0.0, 0.0);
    for (a, b) in y.iter().zip(y_ref) {
        let (da, db) = (a - mu_y, b - mu_r);
        var_y += da * da;
        var_r += db * db;
        cov += da * db;
    }
    var_y /= n;
    var_r /= n;
    cov /= n;
    let c1 = (SSIM_K1 * dynamic_range).powi(2);
    let c2 = (SSIM_K2 * dynamic_range).powi(2);
    Ok(((2.0 * mu_y * mu_r + c1) * (2.0 * cov + c2)) / ((mu_y * mu_y + mu_r * mu_r + c1) * (var_y + var_r + c2)))
}

pub fn ssim(y: &DepthMap, y_ref: &DepthMap) -> Result<f64> {
    check_same(y, y_ref)?;
    ssim_values(&as_f64(y), &as_f64(y_ref), PEAK)
}

/// PSNR in dB; identical inputs have no finite value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn value(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Psnr::Infinite)
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Psnr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Psnr::Finite(v) => s.serialize_f64(*v),
            Psnr::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Psnr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Psnr::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Psnr::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
        }
    }
}

pub fn psnr_from_mse(mse: f64) -> Psnr {
    if mse == 0.0 {
        Psnr::Infinite
    } else {
        Psnr::Finite(10.0 * (PEAK * PEAK / mse).log10())
    }
}

pub fn psnr(y: &DepthMap, y_ref: &DepthMap) -> Result<Psnr> {
    Ok(psnr_from_mse(mse(y, y_ref)?))
}

/// Normalized correlation `Σ I·I′ / √(ΣI² · ΣI′²)` over real values.
pub fn acc(values: &[f64], values_ref: &[f64]) -> Result<f64> {
    check_len(values, values_ref)?;
    let (mut dot, mut e, mut e_ref) = (0.0, 0.0, 0.0);
    for (a, b) in values.iter().zip(values_ref) {
        dot += a * b;
        e += a * a;
        e_ref += b * b;
    }
    if e == 0.0 || e_ref == 0.0 {
        return Err(Error::ZeroInput("acc"));
    }
    Ok((dot / (e * e_ref).sqrt()).min(1.0))
}

/// Depth ACC on the 0–255 scale.
pub fn acc_depth(y: &DepthMap, y_ref: &DepthMap) -> Result<f64> {
    check_same(y, y_ref)?;
    acc(&as_f64(y), &as_f64(y_ref))
}

/// Denominator of the relative squared error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqRelConvention {
    /// `(y − y′)² / y′²`
    #[default]
    AsPrinted,
    /// `(y − y′)² / y′`, the form common in the depth-estimation literature.
    Conventional,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub abs_rel: f64,
    pub sq_rel: f64,
    pub rmse: f64,
    pub lrmse: f64,
    /// Pixels with nonzero ground truth (the Abs rel / Sq rel mask).
    pub mask_px: usize,
    /// Pixels entering LRMSE: ground truth and estimate both nonzero.
    pub log_mask_px: usize,
}

/// Relative and RMS errors on depths normalized to [0, 1].
///
/// Abs rel and Sq rel skip pixels whose ground truth is 0; LRMSE also skips
/// pixels whose estimate is 0 (the logarithm is undefined there). RMSE uses
/// every pixel.
pub fn error_stats_normalized(y: &[f64], y_ref: &[f64], convention: SqRelConvention) -> Result<ErrorStats> {
    check_len(y, y_ref)?;
    let (mut abs_rel, mut sq_rel, mut sq, mut log_sq) = (0.0, 0.0, 0.0, 0.0);
    let (mut mask_px, mut log_mask_px) = (0usize, 0usize);
    for (&a, &b) in y.iter().zip(y_ref) {
        let d = a - b;
        sq += d * d;
        if b == 0.0 {
            continue;
        }
        mask_px += 1;
        abs_rel += d.abs() / b;
        sq_rel += match convention {
            SqRelConvention::AsPrinted => d * d / (b * b),
            SqRelConvention::Conventional => d * d / b,
        };
        if a > 0.0 {
            log_mask_px += 1;
            let l = a.ln() - b.ln();
            log_sq += l * l;
        }
    }
    if mask_px == 0 {
        return Err(Error::EmptyMask("abs_rel/sq_rel"));
    }
    if log_mask_px == 0 {
        return Err(Error::EmptyMask("lrmse"));
    }
    Ok(ErrorStats {
        abs_rel: abs_rel / mask_px as f64,
        sq_rel: sq_rel / mask_px as f64,
        rmse: (sq / y.len() as f64).sqrt(),
        lrmse: (log_sq / log_mask_px as f64).sqrt(),
        mask_px,
        log_mask_px,
    })
}

pub fn error_stats(y: &DepthMap, y_ref: &DepthMap, convention: SqRelConvention) -> Result<ErrorStats> {
    check_same(y, y_ref)?;
    error_stats_normalized(&normalized(y), &normalized(y_ref), convention)
}
