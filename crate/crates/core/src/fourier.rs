//! Radix-2 FFT and the periodic-grid Fourier toolkit built on it.
//!
//! Coefficients follow `û_m = (1/N) Σ_j u_j e^{−2πi jm/N}`, stored in FFT
//! order (index `j` holds mode `j` for `j < N/2` and mode `j − N` above).

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, sin};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Precomputed plan for complex transforms of one power-of-two length.
#[derive(Debug, Clone)]
pub struct Fft {
    n: usize,
    twiddles: Vec<Complex64>,
    bitrev: Vec<usize>,
}

impl Fft {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Invalid(alloc::format!("FFT length {n} is not a power of two")));
        }
        let bits = n.trailing_zeros();
        let bitrev = (0..n).map(|j| j.reverse_bits() >> (usize::BITS - bits)).collect();
        let twiddles = (0..n / 2)
            .map(|j| {
                let t = -2.0 * PI * j as f64 / n as f64;
                Complex64::new(cos(t), sin(t))
            })
            .collect();
        Ok(Fft { n, twiddles, bitrev })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// In-place `X_m = Σ_j x_j e^{−2πi jm/N}` (unnormalized).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    /// In-place `x_j = Σ_m X_m e^{+2πi jm/N}` (unnormalized).
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        assert_eq!(data.len(), self.n, "FFT plan length mismatch");
        for j in 0..self.n {
            let r = self.bitrev[j];
            if j < r {
                data.swap(j, r);
            }
        }
        let mut len = 2;
        while len <= self.n {
            let half = len / 2;
            let stride = self.n / len;
            for start in (0..self.n).step_by(len) {
                for j in 0..half {
                    let w = self.twiddles[j * stride];
                    let w = if inverse { w.conj() } else { w };
                    let t = w * data[start + j + half];
                    let u = data[start + j];
                    data[start + j] = u + t;
                    data[start + j + half] = u - t;
                }
            }
            len <<= 1;
        }
    }

    /// Normalized coefficients `û_m` of real samples.
    pub fn coefficients(&self, samples: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|z| *z *= scale);
        buf
    }

    /// Real samples from normalized coefficients (imaginary residue discarded).
    pub fn synthesize(&self, coeffs: &[Complex64]) -> Vec<f64> {
        let mut buf = coeffs.to_vec();
        self.inverse(&mut buf);
        buf.iter().map(|z| z.re).collect()
    }
}

/// Signed mode number held at FFT index `j`.
pub fn mode(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Physical wavenumber `ξ_m = 2πm/L`.
pub fn wavenumber(m: i64, period: f64) -> f64 {
    2.0 * PI * m as f64 / period
}

/// Uniform grid `x_j = jL/N`, endpoint excluded.
pub fn grid(period: f64, n: usize) -> Vec<f64> {
    (0..n).map(|j| j as f64 * period / n as f64).collect()
}

/// Applies a real even Fourier multiplier `σ(m)` to real samples.
pub fn apply_multiplier<F: Fn(i64) -> f64>(fft: &Fft, samples: &[f64], sigma: F) -> Vec<f64> {
    let n = fft.len();
    let mut c = fft.coefficients(samples);
    for (j, z) in c.iter_mut().enumerate() {
        *z *= sigma(mode(j, n));
    }
    fft.synthesize(&c)
}

/// Spectral derivative of order `order`; the Nyquist mode is dropped for odd orders.
pub fn derivative(fft: &Fft, samples: &[f64], period: f64, order: u32) -> Vec<f64> {
    let n = fft.len();
    let mut c = fft.coefficients(samples);
    for (j, z) in c.iter_mut().enumerate() {
        let m = mode(j, n);
        if order % 2 == 1 && j == n / 2 {
            *z = Complex64::new(0.0, 0.0);
            continue;
        }
        *z *= Complex64::new(0.0, wavenumber(m, period)).powu(order);
    }
    fft.synthesize(&c)
}

/// Coefficients of `u(· + r)`: mode `m` picks up `e^{iξ_m r}`, Nyquist is zeroed.
pub fn shift_coefficients(coeffs: &[Complex64], period: f64, r: f64) -> Vec<Complex64> {
    let n = coeffs.len();
    let base = Complex64::from_polar(1.0, 2.0 * PI * r / period);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut phase = Complex64::new(1.0, 0.0);
    out[0] = coeffs[0];
    for m in 1..n / 2 {
        phase *= base;
        out[m] = coeffs[m] * phase;
        out[n - m] = coeffs[n - m] * phase.conj();
    }
    out
}

/// Real trigonometric series of a band-limited periodic function, evaluated off-grid.
///
/// Modes whose coefficients fall below a relative cutoff are dropped, which
/// makes repeated evaluation inside ODE right-hand sides cheap.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    period: f64,
    mean: f64,
    // (mode, 2·û_m) for the retained positive modes
    terms: Vec<(u32, Complex64)>,
}

impl FourierSeries {
    pub fn from_coefficients(coeffs: &[Complex64], period: f64, cutoff: f64) -> Self {
        let n = coeffs.len();
        let peak = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let terms = (1..n / 2)
            .filter(|&m| coeffs[m].norm() > cutoff * peak)
            .map(|m| (m as u32, 2.0 * coeffs[m]))
            .collect();
        FourierSeries { period, mean: coeffs[0].re, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value and first two derivatives at `x`.
    pub fn eval_with_derivatives(&self, x: f64) -> (f64, f64, f64) {
        let k1 = 2.0 * PI / self.period;
        let base = Complex64::from_polar(1.0, k1 * x);
        let (mut v, mut d1, mut d2) = (self.mean, 0.0, 0.0);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut last = 0u32;
        for &(m, c) in &self.terms {
            // consecutive retained modes are the common case; powers fill gaps
            phase *= if m == last + 1 { base } else { base.powu(m - last) };
            last = m;
            let z = c * phase;
            let xi = k1 * m as f64;
            v += z.re;
            d1 -= xi * z.im;
            d2 -= xi * xi * z.re;
        }
        (v, d1, d2)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_with_derivatives(x).0
    }
}

/// Trapezoid rule on the uniform periodic grid.
pub fn integrate(samples: &[f64], period: f64) -> f64 {
    samples.iter().sum::<f64>() * period / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_must_be_a_power_of_two() {
        for n in [0, 1, 6, 100] {
            assert!(Fft::new(n).is_err(), "n = {n}");
        }
        assert_eq!(Fft::new(8).unwrap().len(), 8);
    }

    #[test]
    fn mode_ordering() {
        let modes: Vec<i64> = (0..8).map(|j| mode(j, 8)).collect();
        assert_eq!(modes, [0, 1, 2, 3, -4, -3, -2, -1]);
    }

    #[test]
    fn round_trip_and_mean() {
        let fft = Fft::new(16).unwrap();
        let x = grid(2.0, 16);
        let u: Vec<f64> = x.iter().map(|&x| 1.5 + libm::cos(PI * x)).collect();
        let back = fft.synthesize(&fft.coefficients(&u));
        assert!(u.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-14));
        assert!((integrate(&u, 2.0) - 3.0).abs() < 1e-14);
    }
}
