use std::f64::consts::PI;

use holopipe::cgh::{propagate, propagate_with, Kernel};
use holopipe::imagecore::ComplexField;
use num_complex::Complex64;

const N: usize = 128;
const PITCH: f64 = 2.16e-5;
const LAMBDA: f64 = 638e-9;

fn gaussian_source(sigma_px: f64) -> ComplexField {
    let c = (N / 2) as f64;
    let data = (0..N * N)
        .map(|i| {
            let (x, y) = ((i % N) as f64 - c, (i / N) as f64 - c);
            Complex64::new((-(x * x + y * y) / (2.0 * sigma_px * sigma_px)).exp(), 0.0)
        })
        .collect();
    ComplexField::new(N, N, PITCH, LAMBDA, data).unwrap()
}

/// First Rayleigh–Sommerfeld integral evaluated by direct summation over
/// the source samples, each weighted by its pixel area.
fn rayleigh_sommerfeld(src: &ComplexField, x: f64, y: f64, z: f64) -> Complex64 {
    let k = 2.0 * PI / LAMBDA;
    let c = (N / 2) as f64;
    let area = PITCH * PITCH;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &u) in src.data().iter().enumerate() {
        if u.norm() < 1e-14 {
            continue;
        }
        let sx = ((i % N) as f64 - c) * PITCH;
        let sy = ((i / N) as f64 - c) * PITCH;
        let r = ((x - sx).powi(2) + (y - sy).powi(2) + z * z).sqrt();
        let h = (z / r) * Complex64::new(1.0 / r, -k) * Complex64::cis(k * r) / (2.0 * PI * r);
        acc += u * h * area;
    }
    acc
}

fn relative_rms(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum();
    let den: f64 = b.iter().map(|q| q.norm_sqr()).sum();
    (num / den).sqrt()
}

#[test]
fn angular_spectrum_matches_rayleigh_sommerfeld() {
    let src = gaussian_source(3.0);
    let z = 0.05;
    let out = propagate(&src, z);
    let c = N / 2;
    let mut ours = Vec::new();
    let mut oracle = Vec::new();
    for py in c - 4..c + 4 {
        for px in c - 4..c + 4 {
            ours.push(out.data()[py * N + px]);
            let x = (px as f64 - c as f64) * PITCH;
            let y = (py as f64 - c as f64) * PITCH;
            oracle.push(rayleigh_sommerfeld(&src, x, y, z));
        }
    }
    let err = relative_rms(&ours, &oracle);
    assert!(err < 0.02, "relative RMS {err}");
}

#[test]
fn fresnel_agrees_with_angular_spectrum_paraxially() {
    let src = gaussian_source(6.0);
    let a = propagate_with(&src, 0.03, Kernel::AngularSpectrum);
    let b = propagate_with(&src, 0.03, Kernel::Fresnel);
    assert!(relative_rms(b.data(), a.data()) < 1e-3);
}

#[test]
fn back_propagation_inverts() {
    let src = gaussian_source(2.0);
    let back = propagate(&propagate(&src, 0.2), -0.2);
    assert!(relative_rms(back.data(), src.data()) < 1e-9);
    let e0 = src.energy();
    assert!(((propagate(&src, 0.15).energy() - e0) / e0).abs() < 1e-9);
}
