//! First integrals `(φ')² = G(φ)` of the profile ODEs and the brute-force
//! period/profile oracles built on them.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, fabs, sin, sqrt};

use crate::error::{Error, Result};
use crate::families::WaveProfile;
use crate::nonlinearity::Nonlinearity;
use crate::ode::Dopri5;
use crate::symbol::SymbolKind;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx) + f(mid + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * half, fabs((kron - gauss) * half))
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of a smooth integrand.
pub fn adaptive_gk<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rtol: f64) -> f64 {
    let mut intervals: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    intervals.push((a, b, v, e));
    for _ in 0..2000 {
        let total: f64 = intervals.iter().map(|iv| iv.2).sum();
        let err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if err <= rtol * fabs(total) || err < 1e-300 {
            break;
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, iv)| if iv.3 > best.1 { (i, iv.3) } else { best });
        let (lo, hi, _, _) = intervals.swap_remove(idx);
        let m = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, m);
        let (v2, e2) = gk15(&mut f, m, hi);
        intervals.push((lo, m, v1, e1));
        intervals.push((m, hi, v2, e2));
    }
    intervals.iter().map(|iv| iv.2).sum()
}

/// `d φ'' = ℓ φ − f(φ) + A` integrated once: `(φ')² = G(φ) = (ℓφ² − 2F(φ) + 2Aφ − 2B)/d`.
#[derive(Debug, Clone, Copy)]
pub struct FirstIntegralSpec {
    pub f: Nonlinearity,
    pub linear: f64,
    pub dispersion: f64,
    pub a: f64,
    pub b: f64,
}

impl FirstIntegralSpec {
    /// Second-order profile equation `−φ'' + cφ − f(φ) + A = 0`.
    pub fn second_order(f: Nonlinearity, c: f64, a: f64, b: f64) -> Self {
        FirstIntegralSpec { f, linear: c, dispersion: 1.0, a, b }
    }

    /// Regularized profile equation `−cφ'' + (c − 1)φ − f(φ) + A = 0`.
    pub fn regularized(f: Nonlinearity, c: f64, a: f64, b: f64) -> Self {
        FirstIntegralSpec { f, linear: c - 1.0, dispersion: c, a, b }
    }

    /// First integral of a constructed profile with `B` read off at `x = 0`, where `φ' = 0`.
    pub fn from_profile(profile: &WaveProfile) -> Result<Self> {
        if !matches!(profile.family.symbol().kind, SymbolKind::NegSecondDerivative) {
            return Err(Error::Unsupported("first integrals need a local second-order dispersion"));
        }
        let f = profile.family.nonlinearity();
        let mut spec = if profile.family.regularized() {
            FirstIntegralSpec::regularized(f, profile.c, profile.a, 0.0)
        } else {
            FirstIntegralSpec::second_order(f, profile.c, profile.a, 0.0)
        };
        let p0 = profile.samples[0];
        spec.b = 0.5 * spec.linear * p0 * p0 - f.primitive(p0) + spec.a * p0;
        Ok(spec)
    }

    pub fn g(&self, phi: f64) -> f64 {
        (self.linear * phi * phi - 2.0 * self.f.primitive(phi) + 2.0 * self.a * phi - 2.0 * self.b)
            / self.dispersion
    }

    pub fn dg(&self, phi: f64) -> f64 {
        2.0 * (self.linear * phi - self.f.f(phi) + self.a) / self.dispersion
    }

    /// `G(root + s)` for a root of `G`. For polynomial `f` this is the exact
    /// quartic Taylor polynomial, which avoids the cancellation that swamps
    /// `G` near the turning points of narrow orbits.
    pub fn g_from_root(&self, root: f64, s: f64) -> f64 {
        match self.f.polynomial_jets(root) {
            Some((d2f, d3f)) => {
                let g1 = self.dg(root);
                let g2 = 2.0 * (self.linear - self.f.df(root)) / self.dispersion;
                let g3 = -2.0 * d2f / self.dispersion;
                let g4 = -2.0 * d3f / self.dispersion;
                s * (g1 + s * (0.5 * g2 + s * (g3 / 6.0 + s * g4 / 24.0)))
            }
            None => self.g(root + s),
        }
    }

    fn polish(&self, mut r: f64, width: f64) -> f64 {
        let r0 = r;
        for _ in 0..30 {
            let d = self.dg(r);
            if d == 0.0 {
                break;
            }
            let step = self.g(r) / d;
            if fabs(r - step - r0) > 0.1 * width {
                break;
            }
            r -= step;
            if fabs(step) <= 4.0 * f64::EPSILON * fabs(r).max(width) {
                break;
            }
        }
        r
    }

    fn checked_roots(&self, root_lo: f64, root_hi: f64) -> Result<(f64, f64)> {
        if !(root_lo < root_hi) {
            return Err(Error::Invalid(alloc::format!("root interval [{root_lo}, {root_hi}] is empty")));
        }
        let width = root_hi - root_lo;
        let lo = self.polish(root_lo, width);
        let hi = self.polish(root_hi, width);
        let width = hi - lo;
        let gmax = (1..64)
            .map(|j| self.g(lo + width * j as f64 / 64.0))
            .fold(f64::NEG_INFINITY, f64::max);
        let gmin = (1..64)
            .map(|j| self.g(lo + width * j as f64 / 64.0))
            .fold(f64::INFINITY, f64::min);
        if !(gmin > 0.0) {
            return Err(Error::Invalid(alloc::format!(
                "G is not positive between the roots {lo} and {hi}"
            )));
        }
        let slope = gmax / width;
        if self.dg(lo) < 1e-7 * slope || -self.dg(hi) < 1e-7 * slope {
            return Err(Error::DegenerateOrbit("first integral has a multiple root at the orbit boundary"));
        }
        Ok((lo, hi))
    }
}

/// Period `2∫ dφ/√G(φ)` of the orbit between two simple roots of `G`.
///
/// The substitution `φ = lo + (hi − lo) sin²(t/2)` removes both inverse
/// square-root endpoint singularities.
pub fn quadrature_period(spec: &FirstIntegralSpec, root_lo: f64, root_hi: f64) -> Result<f64> {
    let (lo, hi) = spec.checked_roots(root_lo, root_hi)?;
    let w = hi - lo;
    let integrand = |t: f64| {
        let g = if t < 0.5 * PI {
            let s = sin(0.5 * t);
            spec.g_from_root(lo, w * s * s)
        } else {
            let c = cos(0.5 * t);
            spec.g_from_root(hi, -w * c * c)
        };
        if g <= 0.0 {
            // roundoff next to a root; the integrand is bounded there
            return 0.0;
        }
        0.5 * w * sin(t) / sqrt(g)
    };
    Ok(2.0 * adaptive_gk(integrand, 0.0, PI, 1e-13))
}

/// Profile obtained by integrating `φ'' = G'(φ)/2` from the upper root with
/// `φ'(0) = 0`, sampled at `N` equispaced points of the quadrature period.
pub fn quadrature_profile(spec: &FirstIntegralSpec, root_lo: f64, root_hi: f64, n: usize) -> Result<Vec<f64>> {
    let period = quadrature_period(spec, root_lo, root_hi)?;
    let (_, hi) = spec.checked_roots(root_lo, root_hi)?;
    let scale = fabs(hi).max(fabs(root_lo)).max(f64::MIN_POSITIVE);
    let solver = Dopri5::with_tolerance(1e-13, 1e-15 * scale);
    let rhs = |_x: f64, y: &[f64; 2]| [y[1], 0.5 * spec.dg(y[0])];
    let mut out = Vec::with_capacity(n);
    let mut y = [hi, 0.0];
    let mut x = 0.0;
    out.push(hi);
    for j in 1..n {
        let xj = period * j as f64 / n as f64;
        y = solver.integrate(rhs, x, y, xj)?;
        x = xj;
        out.push(y[0]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlinearity::Nonlinearity;

    #[test]
    fn adaptive_rule_handles_endpoint_singularities() {
        let v = adaptive_gk(|x| x * x * x, 0.0, 2.0, 1e-14);
        assert!((v - 4.0).abs() < 1e-13);
        // ∫₀¹ dx/√x = 2
        let v = adaptive_gk(|x| 1.0 / libm::sqrt(x), 0.0, 1.0, 1e-10);
        assert!((v - 2.0).abs() < 1e-8);
    }

    #[test]
    fn root_interval_errors() {
        let spec = FirstIntegralSpec::second_order(Nonlinearity::mkdv(), 1.5, 0.0, 0.1);
        assert!(matches!(quadrature_period(&spec, 1.0, 0.5), Err(Error::Invalid(_))));
        assert!(quadrature_profile(&spec, 1.0, 1.0, 64).is_err());
    }
}
