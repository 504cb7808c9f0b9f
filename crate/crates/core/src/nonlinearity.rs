//! Nonlinear terms `f(u)` with derivative and primitive `F(u) = ∫₀ᵘ f`.

use libm::{fabs, pow};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nonlinearity {
    /// `f(u) = c2 u² + c3 u³`.
    Polynomial { c2: f64, c3: f64 },
    /// `f(u) = coef |u|^p`, `p > 1` (only `C¹` at the origin for `p < 2`).
    AbsPower { coef: f64, p: f64 },
}

impl Nonlinearity {
    pub fn kdv() -> Self {
        Nonlinearity::Polynomial { c2: 0.5, c3: 0.0 }
    }

    pub fn mkdv() -> Self {
        Nonlinearity::Polynomial { c2: 0.0, c3: 2.0 }
    }

    /// `a u²/2 + b u³/3`.
    pub fn gardner(a: f64, b: f64) -> Self {
        Nonlinearity::Polynomial { c2: 0.5 * a, c3: b / 3.0 }
    }

    pub fn ilw() -> Self {
        Nonlinearity::Polynomial { c2: 1.0, c3: 0.0 }
    }

    pub fn mbbm() -> Self {
        Nonlinearity::Polynomial { c2: 0.0, c3: 1.0 }
    }

    pub fn schamel() -> Self {
        Nonlinearity::AbsPower { coef: 1.0, p: 1.5 }
    }

    pub fn f(&self, u: f64) -> f64 {
        match *self {
            Nonlinearity::Polynomial { c2, c3 } => u * u * (c2 + c3 * u),
            Nonlinearity::AbsPower { coef, p } => coef * pow(fabs(u), p),
        }
    }

    pub fn df(&self, u: f64) -> f64 {
        match *self {
            Nonlinearity::Polynomial { c2, c3 } => u * (2.0 * c2 + 3.0 * c3 * u),
            Nonlinearity::AbsPower { coef, p } => coef * p * u.signum() * pow(fabs(u), p - 1.0),
        }
    }

    pub fn primitive(&self, u: f64) -> f64 {
        match *self {
            Nonlinearity::Polynomial { c2, c3 } => u * u * u * (c2 / 3.0 + c3 * u / 4.0),
            Nonlinearity::AbsPower { coef, p } => {
                coef * u.signum() * pow(fabs(u), p + 1.0) / (p + 1.0)
            }
        }
    }

    /// `(f'', f''')` for the polynomial case, where the Taylor series terminates.
    pub fn polynomial_jets(&self, u: f64) -> Option<(f64, f64)> {
        match *self {
            Nonlinearity::Polynomial { c2, c3 } => Some((2.0 * c2 + 6.0 * c3 * u, 6.0 * c3)),
            Nonlinearity::AbsPower { .. } => None,
        }
    }

    /// True when `f` is only finitely smooth at zero, so solutions must keep one sign.
    pub fn needs_positivity(&self) -> bool {
        matches!(self, Nonlinearity::AbsPower { .. })
    }
}
