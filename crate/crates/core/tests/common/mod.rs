//! Shared oracles for the integration tests. Nothing here calls into the crate.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton on P_n.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite 20-point Gauss–Legendre on `panels` equal panels.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let (x, w) = gauss_legendre_rule(20);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            acc += wi * f(mid + 0.5 * h * xi);
        }
    }
    0.5 * h * acc
}

pub fn k_quad(k: f64) -> f64 {
    quad(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 16)
}

pub fn e_quad(k: f64) -> f64 {
    quad(|t| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 16)
}

pub fn f_quad(phi: f64, k: f64) -> f64 {
    quad(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 16)
}

pub fn einc_quad(phi: f64, k: f64) -> f64 {
    quad(|t| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 16)
}

/// Amplitude `am(u, k)` for `0 ≤ u ≤ K` by bisection on the quadrature `F`.
pub fn am_bisect(u: f64, k: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, PI / 2.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f_quad(mid, k) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Periodic trapezoid rule.
pub fn trapezoid(samples: &[f64], period: f64) -> f64 {
    samples.iter().sum::<f64>() * period / samples.len() as f64
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Naive radix-free DFT, `X_m = Σ x_j e^{−2πi jm/N}` as (re, im).
pub fn naive_dft(x: &[f64]) -> Vec<(f64, f64)> {
    let n = x.len();
    (0..n)
        .map(|m| {
            let mut re = 0.0;
            let mut im = 0.0;
            for (j, &v) in x.iter().enumerate() {
                let a = -2.0 * PI * ((j * m) % n) as f64 / n as f64;
                re += v * a.cos();
                im += v * a.sin();
            }
            (re, im)
        })
        .collect()
}

/// Spectral derivative by the naive DFT, used as an oracle for residuals.
pub fn naive_second_derivative(u: &[f64], period: f64) -> Vec<f64> {
    let n = u.len();
    let c = naive_dft(u);
    (0..n)
        .map(|j| {
            let mut acc = 0.0;
            for (m, &(re, im)) in c.iter().enumerate() {
                let mm = if m < n / 2 { m as f64 } else if m == n / 2 { 0.0 } else { m as f64 - n as f64 };
                let xi = 2.0 * PI * mm / period;
                let a = 2.0 * PI * ((j * m) % n) as f64 / n as f64;
                acc += -xi * xi * (re * a.cos() - im * a.sin());
            }
            acc / n as f64
        })
        .collect()
}
