//! Conserved quantities, the augmented functional, and the translation-quotient
//! pseudo-metric `ρ`. Integrals use the trapezoid rule on the periodic grid.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{fabs, floor, pow, sqrt};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::WaveProfile;
use crate::fourier::{integrate, mode, Fft};
use crate::nonlinearity::Nonlinearity;
use crate::symbol::SymbolSpec;

/// `(1 + m²)^s` on the integer mode index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevWeight {
    pub s: f64,
}

impl SobolevWeight {
    pub fn weight(&self, m: i64) -> f64 {
        pow(1.0 + (m * m) as f64, self.s)
    }
}

fn plan(n: usize) -> Result<Fft> {
    Fft::new(n)
}

fn dot(u: &[f64], v: &[f64], period: f64) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() * period / u.len() as f64
}

/// `E(u) = ½∫(u Mu − 2F(u))`.
pub fn energy(u: &[f64], symbol: &SymbolSpec, f: &Nonlinearity, period: f64) -> Result<f64> {
    let fft = plan(u.len())?;
    let mu = symbol.apply(&fft, u, period);
    let pot: Vec<f64> = u.iter().map(|&x| f.primitive(x)).collect();
    Ok(0.5 * dot(u, &mu, period) - integrate(&pot, period))
}

/// `Q(u) = ½∫u²`.
pub fn charge_plain(u: &[f64], period: f64) -> f64 {
    0.5 * dot(u, u, period)
}

/// `Q(u) = ½∫(u² + u Mu)`, the charge of the regularized equations.
pub fn charge_reg(u: &[f64], symbol: &SymbolSpec, period: f64) -> Result<f64> {
    let fft = plan(u.len())?;
    let mu = symbol.apply(&fft, u, period);
    Ok(0.5 * (dot(u, u, period) + dot(u, &mu, period)))
}

/// `V(u) = ∫u`.
pub fn mean(u: &[f64], period: f64) -> f64 {
    integrate(u, period)
}

/// `L²` gradient of the energy, `Mu − f(u)`.
pub fn energy_gradient(u: &[f64], symbol: &SymbolSpec, f: &Nonlinearity, period: f64) -> Result<Vec<f64>> {
    let fft = plan(u.len())?;
    let mu = symbol.apply(&fft, u, period);
    Ok(u.iter().zip(mu).map(|(&x, m)| m - f.f(x)).collect())
}

/// Gradient of either charge: `u`, or `u + Mu` when regularized.
pub fn charge_gradient(u: &[f64], symbol: &SymbolSpec, period: f64, regularized: bool) -> Result<Vec<f64>> {
    if !regularized {
        return Ok(u.to_vec());
    }
    let fft = plan(u.len())?;
    let mu = symbol.apply(&fft, u, period);
    Ok(u.iter().zip(mu).map(|(&x, m)| x + m).collect())
}

/// Sup norm of `F_k'(φ) = E'(φ) + cQ'(φ) + AV'(φ)`, or `E' + (c − 1)Q_reg' + AV'`
/// for the regularized families.
pub fn fk_gradient_residual(profile: &WaveProfile, symbol: &SymbolSpec) -> Result<f64> {
    let f = profile.family.nonlinearity();
    let reg = profile.family.regularized();
    let de = energy_gradient(&profile.samples, symbol, &f, profile.period)?;
    let dq = charge_gradient(&profile.samples, symbol, profile.period, reg)?;
    let mult = if reg { profile.c - 1.0 } else { profile.c };
    Ok(de
        .iter()
        .zip(&dq)
        .map(|(e, q)| fabs(e + mult * q + profile.a))
        .fold(0.0, f64::max))
}

/// `M_k(u) = ∂c/∂k Q(u) + ∂A/∂k V(u)` with the plain or regularized charge.
pub fn mk_value(u: &[f64], dc_dk: f64, da_dk: f64, regularized: bool, symbol: &SymbolSpec, period: f64) -> Result<f64> {
    let q = if regularized { charge_reg(u, symbol, period)? } else { charge_plain(u, period) };
    Ok(dc_dk * q + da_dk * mean(u, period))
}

/// `‖u‖_{H^s}` with `‖u‖² = L Σ (1 + m²)^s |û_m|²` (Nyquist mode excluded).
pub fn sobolev_norm(u: &[f64], s: f64, period: f64) -> Result<f64> {
    let fft = plan(u.len())?;
    let c = fft.coefficients(u);
    let n = c.len();
    let w = SobolevWeight { s };
    let acc: f64 = (0..n)
        .filter(|&j| j != n / 2)
        .map(|j| w.weight(mode(j, n)) * c[j].norm_sqr())
        .sum();
    Ok(sqrt(period * acc))
}

/// Minimizer of the translation-quotient distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoResult {
    pub distance: f64,
    /// shift `r` with `‖u − v(· + r)‖` minimal, in `[0, L)`
    pub shift: f64,
}

/// `ρ(u, v) = inf_r ‖u − v(· + r)‖_{H^s}`.
pub fn rho(u: &[f64], v: &[f64], s: f64, period: f64) -> Result<f64> {
    Ok(rho_with_shift(u, v, s, period)?.distance)
}

/// `ρ` together with the optimal shift: a cross-correlation scan over the
/// `N` grid shifts, then golden-section refinement of the direct distance.
pub fn rho_with_shift(u: &[f64], v: &[f64], s: f64, period: f64) -> Result<RhoResult> {
    if u.len() != v.len() {
        return Err(Error::Shape(u.len(), v.len()));
    }
    let n = u.len();
    let fft = plan(n)?;
    let cu = fft.coefficients(u);
    let cv = fft.coefficients(v);
    let w = SobolevWeight { s };
    // C(r_j) = Σ w_m conj(û_m) v̂_m e^{iξ_m r_j} at r_j = jL/N
    let mut corr: Vec<Complex64> = (0..n)
        .map(|j| if j == n / 2 { Complex64::new(0.0, 0.0) } else { w.weight(mode(j, n)) * cu[j].conj() * cv[j] })
        .collect();
    fft.inverse(&mut corr);
    let best = (0..n).fold(0, |b, j| if corr[j].re > corr[b].re { j } else { b });
    let h = period / n as f64;
    let dist2 = |r: f64| {
        let base = Complex64::from_polar(1.0, 2.0 * PI * r / period);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = w.weight(0) * (cu[0] - cv[0]).norm_sqr();
        for m in 1..n / 2 {
            phase *= base;
            let wm = w.weight(m as i64);
            acc += wm * (cu[m] - cv[m] * phase).norm_sqr();
            acc += wm * (cu[n - m] - cv[n - m] * phase.conj()).norm_sqr();
        }
        period * acc
    };
    let (mut a, mut b) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
    let g = 0.5 * (sqrt(5.0) - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (dist2(x1), dist2(x2));
    while b - a > 1e-10 * period.max(1.0) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = dist2(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = dist2(x2);
        }
    }
    let (mut r, mut d) = (0.5 * (a + b), dist2(0.5 * (a + b)));
    let on_grid = dist2(best as f64 * h);
    if on_grid < d {
        r = best as f64 * h;
        d = on_grid;
    }
    let shift = r - period * floor(r / period);
    Ok(RhoResult { distance: sqrt(d.max(0.0)), shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rho_needs_matching_grids() {
        assert!(matches!(rho(&[0.0; 8], &[0.0; 16], 1.0, 1.0), Err(Error::Shape(8, 16))));
        let u = vec![1.0; 16];
        assert!(rho(&u, &u, 1.0, 2.0).unwrap() < 1e-15);
    }
}
