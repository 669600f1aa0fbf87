use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::imagecore::ComplexField;

/// Free-space transfer function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `exp(i·2πz·√(1/λ² − fx² − fy²))`, zero for evanescent components.
    #[default]
    AngularSpectrum,
    /// Paraxial `exp(i·2πz/λ)·exp(−iπλz(fx² + fy²))`.
    Fresnel,
}

/// FFT plans and frequency grids for one field geometry. Reuse it when the
/// same grid is propagated to many distances.
pub struct Propagator {
    width: usize,
    height: usize,
    wavelength: f64,
    kernel: Kernel,
    fx: Vec<f64>,
    fy: Vec<f64>,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
}

/// DFT bin frequencies in cycles per meter, standard (unshifted) order.
fn frequencies(n: usize, pitch: f64) -> Vec<f64> {
    let span = n as f64 * pitch;
    (0..n)
        .map(|k| {
            let k = if k < n.div_ceil(2) { k as f64 } else { k as f64 - n as f64 };
            k / span
        })
        .collect()
}

impl Propagator {
    pub fn new(width: usize, height: usize, pitch: f64, wavelength: f64, kernel: Kernel) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            width,
            height,
            wavelength,
            kernel,
            fx: frequencies(width, pitch),
            fy: frequencies(height, pitch),
            row_fwd: planner.plan_fft_forward(width),
            row_inv: planner.plan_fft_inverse(width),
            col_fwd: planner.plan_fft_forward(height),
            col_inv: planner.plan_fft_inverse(height),
        }
    }

    pub fn for_field(field: &ComplexField, kernel: Kernel) -> Self {
        Self::new(field.width(), field.height(), field.pitch(), field.wavelength(), kernel)
    }

    fn transform(&self, data: &mut [Complex64], rows: &Arc<dyn Fft<f64>>, cols: &Arc<dyn Fft<f64>>) {
        let (w, h) = (self.width, self.height);
        assert_eq!(data.len(), w * h);
        data.par_chunks_mut(w).for_each(|row| rows.process(row));
        let mut t = vec![Complex64::new(0.0, 0.0); w * h];
        for y in 0..h {
            for x in 0..w {
                t[x * h + y] = data[y * w + x];
            }
        }
        t.par_chunks_mut(h).for_each(|col| cols.process(col));
        for x in 0..w {
            for y in 0..h {
                data[y * w + x] = t[x * h + y];
            }
        }
    }

    /// Unnormalized forward 2-D DFT, in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.row_fwd, &self.col_fwd);
    }

    /// Inverse 2-D DFT including the `1/(w·h)` factor, in place.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.row_inv, &self.col_inv);
        let norm = 1.0 / (self.width * self.height) as f64;
        data.par_iter_mut().for_each(|c| *c *= norm);
    }

    /// Transfer function value at frequency bin `(ix, iy)`.
    fn transfer_at(&self, ix: usize, iy: usize, distance: f64) -> Complex64 {
        let (fx, fy) = (self.fx[ix], self.fy[iy]);
        let f2 = fx * fx + fy * fy;
        match self.kernel {
            Kernel::AngularSpectrum => {
                let arg = 1.0 / (self.wavelength * self.wavelength) - f2;
                if arg <= 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::cis(2.0 * PI * distance * arg.sqrt())
                }
            }
            Kernel::Fresnel => {
                Complex64::cis(2.0 * PI * distance / self.wavelength - PI * self.wavelength * distance * f2)
            }
        }
    }

    /// Multiplies a spectrum by the transfer function for `distance`.
    pub fn apply_transfer(&self, spectrum: &mut [Complex64], distance: f64) {
        let w = self.width;
        spectrum.par_chunks_mut(w).enumerate().for_each(|(iy, row)| {
            for (ix, c) in row.iter_mut().enumerate() {
                *c *= self.transfer_at(ix, iy, distance);
            }
        });
    }

    /// `spectrum_acc += spectrum · T(distance)`.
    pub fn accumulate_transfer(&self, acc: &mut [Complex64], spectrum: &[Complex64], distance: f64) {
        let w = self.width;
        acc.par_chunks_mut(w)
            .zip(spectrum.par_chunks(w))
            .enumerate()
            .for_each(|(iy, (a, s))| {
                for ix in 0..w {
                    a[ix] += s[ix] * self.transfer_at(ix, iy, distance);
                }
            });
    }

    pub fn propagate(&self, field: &ComplexField, distance: f64) -> ComplexField {
        assert_eq!(field.dims(), (self.width, self.height), "propagator built for another grid");
        if distance == 0.0 {
            return field.clone();
        }
        let mut data = field.data().to_vec();
        self.forward(&mut data);
        self.apply_transfer(&mut data, distance);
        self.inverse(&mut data);
        field.with_data(data)
    }
}

/// Band-limited angular-spectrum propagation by a signed `distance` (m).
/// Negative distances back-propagate; zero is the identity.
pub fn propagate(field: &ComplexField, distance: f64) -> ComplexField {
    propagate_with(field, distance, Kernel::AngularSpectrum)
}

pub fn propagate_with(field: &ComplexField, distance: f64, kernel: Kernel) -> ComplexField {
    Propagator::for_field(field, kernel).propagate(field, distance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const PITCH: f64 = 2.16e-5;
    const RED: f64 = 638e-9;

    fn rms(a: &[Complex64], b: &[Complex64]) -> f64 {
        let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
        (s / a.len() as f64).sqrt()
    }

    fn random_field(w: usize, h: usize, seed: u64) -> ComplexField {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let data = (0..w * h)
            .map(|_| Complex64::from_polar(rng.random::<f64>(), rng.random::<f64>() * 2.0 * PI))
            .collect();
        ComplexField::new(w, h, PITCH, RED, data).unwrap()
    }

    #[test]
    fn frequency_grid() {
        let f = frequencies(4, 0.5);
        assert_eq!(f, vec![0.0, 0.5, -1.0, -0.5]);
        let f = frequencies(5, 1.0);
        assert_eq!(f, vec![0.0, 0.2, 0.4, -0.4, -0.2]);
    }

    #[test]
    fn fft_roundtrip() {
        let f = random_field(24, 10, 1);
        let p = Propagator::for_field(&f, Kernel::AngularSpectrum);
        let mut d = f.data().to_vec();
        p.forward(&mut d);
        p.inverse(&mut d);
        assert!(rms(&d, f.data()) < 1e-14);
    }

    #[test]
    fn zero_distance_is_identity() {
        let f = random_field(32, 16, 2);
        assert_eq!(propagate(&f, 0.0), f);
        // Via the transform path as well (tiny nonzero distance).
        let g = propagate(&f, 1e-300);
        assert!(rms(g.data(), f.data()) < 1e-12);
    }

    #[test]
    fn forward_backward_and_energy() {
        let f = random_field(64, 48, 3);
        for kernel in [Kernel::AngularSpectrum, Kernel::Fresnel] {
            let p = Propagator::for_field(&f, kernel);
            let g = p.propagate(&f, 0.15);
            assert!(((g.energy() - f.energy()) / f.energy()).abs() < 1e-9);
            let back = p.propagate(&g, -0.15);
            assert!(rms(back.data(), f.data()) < 1e-9);
        }
    }

    #[test]
    fn evanescent_components_are_removed() {
        // Pitch below λ/2 puts the outer spectrum beyond 1/λ.
        let w = 16;
        let data = (0..w * w).map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
        let f = ComplexField::new(w, w, 2e-7, RED, data).unwrap();
        let g = propagate(&f, 1e-6);
        assert!(g.energy() < 1e-20);
    }

    #[test]
    fn angular_spectrum_and_fresnel_agree_at_low_na() {
        // Smooth Gaussian beam: paraxial approximation holds.
        let (w, h) = (64, 64);
        let data = (0..w * h)
            .map(|i| {
                let (x, y) = ((i % w) as f64 - 32.0, (i / w) as f64 - 32.0);
                Complex64::new((-(x * x + y * y) / 40.0).exp(), 0.0)
            })
            .collect();
        let f = ComplexField::new(w, h, PITCH, RED, data).unwrap();
        let a = propagate_with(&f, 0.05, Kernel::AngularSpectrum);
        let b = propagate_with(&f, 0.05, Kernel::Fresnel);
        let norm = (f.energy() / (w * h) as f64).sqrt();
        assert!(rms(a.data(), b.data()) / norm < 1e-3);
    }
}
