//! Fourier symbols of the dispersion operators.

use alloc::vec::Vec;

use libm::tanh;

use crate::error::{Error, Result};
use crate::fourier::{apply_multiplier, wavenumber, Fft};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind {
    /// `M = −∂ₓ²`, `α(m) = ξ_m²`.
    NegSecondDerivative,
    /// Intermediate long wave operator, `α(m) = ξ_m coth(ξ_m δ) − 1/δ`.
    Ilw { delta: f64 },
}

/// Multiplier of the dispersion operator with its growth metadata:
/// `γ ≤ α(m)` for every mode and `α(m) ~ |m|^{s1}` up to `|m|^{s2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSpec {
    pub kind: SymbolKind,
    pub gamma: f64,
    pub s1: f64,
    pub s2: f64,
}

impl SymbolSpec {
    pub fn neg_second_derivative() -> Self {
        SymbolSpec { kind: SymbolKind::NegSecondDerivative, gamma: 0.0, s1: 2.0, s2: 2.0 }
    }

    pub fn ilw(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Invalid(alloc::format!("ILW depth δ = {delta} must be positive")));
        }
        Ok(SymbolSpec { kind: SymbolKind::Ilw { delta }, gamma: 0.0, s1: 1.0, s2: 1.0 })
    }

    /// `α(m)` on a period-`L` domain. Even in `m`.
    pub fn multiplier(&self, m: i64, period: f64) -> f64 {
        let xi = wavenumber(m, period);
        match self.kind {
            SymbolKind::NegSecondDerivative => xi * xi,
            SymbolKind::Ilw { delta } => {
                if m == 0 {
                    0.0
                } else {
                    xi / tanh(xi * delta) - 1.0 / delta
                }
            }
        }
    }

    /// Order of the Sobolev space `H^{s2/2}` where the stability statements live.
    pub fn energy_order(&self) -> f64 {
        0.5 * self.s2
    }

    pub fn apply(&self, fft: &Fft, samples: &[f64], period: f64) -> Vec<f64> {
        apply_multiplier(fft, samples, |m| self.multiplier(m, period))
    }
}
