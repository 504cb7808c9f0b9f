//! Derivative quantities along a family and the hypothesis report.
//!
//! `Φ = −c'·Q' − A'·V'` and `Ψ = M_k(φ_k) + c'·Q(φ_k)`, with `'` = `d/dk` and the
//! regularized charge for the regularized families.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use libm::{asin, fabs, sqrt};

use crate::elliptic::{complete_e, complete_k, heuman_g, Modulus};
use crate::error::{Error, Result};
use crate::families::{construct, relative_residual, FamilyId, WaveProfile, K_STAR};
use crate::functionals::{charge_plain, charge_reg, mean, mk_value};
use crate::spectral::{assemble, eigs, ilw_pf2_window, neves_theta, pf2_check, Pf2Verdict, SpectrumReport};
use crate::symbol::SymbolKind;

/// A derivative estimate with its Richardson error indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
    pub step: f64,
}

const MAX_SHRINK: usize = 30;

/// Central difference with one Richardson extrapolation (steps `h` and `h/2`).
/// If the stencil leaves `(lo, hi)` or the map fails on it, `h` is halved.
pub fn d_dk<F>(mut map: F, k: f64, h: f64, interval: (f64, f64)) -> Result<Derivative>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut h = h;
    for _ in 0..MAX_SHRINK {
        if k - h > interval.0 && k + h < interval.1 {
            let pts = [map(k + h), map(k - h), map(k + 0.5 * h), map(k - 0.5 * h)];
            if let [Ok(p1), Ok(m1), Ok(p2), Ok(m2)] = pts {
                let d1 = (p1 - m1) / (2.0 * h);
                let d2 = (p2 - m2) / h;
                let value = (4.0 * d2 - d1) / 3.0;
                return Ok(Derivative { value, error: fabs(value - d2), step: h });
            }
        }
        h *= 0.5;
    }
    Err(Error::Stencil(k))
}

/// Open interval of moduli the family is defined on at period `L` (before runtime checks).
pub fn admissible_interval(family: FamilyId, period: f64) -> Result<(f64, f64)> {
    Ok(match family {
        FamilyId::KdvCnoidal => (K_STAR, 1.0),
        FamilyId::MbbmDnsn | FamilyId::RegSchamel => (0.0, crate::families::find_k_l(family, period)?),
        _ => (0.0, 1.0),
    })
}

/// `(c, A, Q, V)` of the constructed wave; `Q` regularized when the family is.
pub fn family_quantities(family: FamilyId, k: f64, period: f64, n: usize) -> Result<[f64; 4]> {
    let p = construct(family, Modulus::new(k)?, period, n)?;
    let (q, v) = charges(&p)?;
    Ok([p.c, p.a, q, v])
}

fn charges(p: &WaveProfile) -> Result<(f64, f64)> {
    let q = if p.family.regularized() {
        charge_reg(&p.samples, &p.family.symbol(), p.period)?
    } else {
        charge_plain(&p.samples, p.period)
    };
    Ok((q, mean(&p.samples, p.period)))
}

/// The four k-derivatives `(c', A', Q', V')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyDerivatives {
    pub dc: Derivative,
    pub da: Derivative,
    pub dq: Derivative,
    pub dv: Derivative,
}

pub fn family_derivatives(family: FamilyId, k: f64, period: f64, n: usize, h: f64) -> Result<FamilyDerivatives> {
    let iv = admissible_interval(family, period)?;
    let d = |idx: usize| d_dk(|kk| family_quantities(family, kk, period, n).map(|q| q[idx]), k, h, iv);
    Ok(FamilyDerivatives { dc: d(0)?, da: d(1)?, dq: d(2)?, dv: d(3)? })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiValue {
    pub phi: f64,
    /// propagated Richardson error bound
    pub error: f64,
    pub derivatives: FamilyDerivatives,
}

/// `Φ = −c'·Q' − A'·V'` by finite differences along the family.
pub fn phi_value(family: FamilyId, k: f64, period: f64, n: usize, h: f64) -> Result<PhiValue> {
    let d = family_derivatives(family, k, period, n, h)?;
    let phi = -d.dc.value * d.dq.value - d.da.value * d.dv.value;
    let error = d.dc.error * fabs(d.dq.value)
        + fabs(d.dc.value) * d.dq.error
        + d.da.error * fabs(d.dv.value)
        + fabs(d.da.value) * d.dv.error;
    Ok(PhiValue { phi, error, derivatives: d })
}

/// Closed-form `(Q, V)` of the families with tabulated integrals.
///
/// `Q` is `½∫φ²`. For the mKdV dnoidal–snoidal family the integrals go through
/// `I₁ = ∫₀^K dn²/(1 + β² sn²)` and `I₂ = ∫₀^K dn⁴/(1 + β² sn²)²`, expressed with
/// `α² = −β²` and `G(w, k)` at `w = asin(β/√(k² + β²))`.
pub fn closed_form_integrals(family: FamilyId, k: Modulus, period: f64) -> Result<(f64, f64)> {
    let kv = k.k();
    let k2 = kv * kv;
    let kk = complete_k(k);
    let ee = complete_e(k);
    match family {
        FamilyId::KdvCnoidal => {
            let v = 48.0 * kk * (ee - (1.0 - k2) * kk) / period;
            let l2 = 48.0 * 48.0 * kk * kk * kk / (3.0 * period * period * period)
                * ((2.0 - 5.0 * k2 + 3.0 * k2 * k2) * kk + (4.0 * k2 - 2.0) * ee);
            Ok((0.5 * l2, v))
        }
        FamilyId::MkdvDnoidal => Ok((2.0 * kk * ee / period, 2.0 * FRAC_PI_2)),
        FamilyId::MkdvDnsn => {
            let s = sqrt(k2 * k2 - k2 + 1.0);
            let beta2 = s + k2 - 1.0;
            let g = sqrt(s - k2 + 0.5);
            let a2 = -beta2;
            let w = asin(sqrt(beta2) / sqrt(k2 + beta2));
            let gw = heuman_g(w, k)?;
            let den = sqrt(a2 * (1.0 - a2) * (a2 - k2));
            let i1 = (k2 - a2) * gw / den;
            let pi = k2 * kk / (k2 - a2) - a2 * gw / den;
            let kp2 = 1.0 - k2;
            let eta0 = 1.0 / (2.0 * (a2 - 1.0) * (k2 - a2));
            let v2 = eta0
                * (a2 * ee + (2.0 * k2 * k2 * a2 - 2.0 * k2 * k2 + a2 * a2 * kp2) / (k2 - a2) * kk
                    - a2 * (2.0 * a2 * k2 + 2.0 * a2 - a2 * a2 - 3.0 * k2) * gw / den);
            let i2 = (k2 * k2 * kk + 2.0 * k2 * (a2 - k2) * pi + (a2 - k2) * (a2 - k2) * v2) / (a2 * a2);
            Ok((4.0 * kk * i2 / (g * g * period), 4.0 * i1 / (sqrt(2.0) * g)))
        }
        _ => Err(Error::Unsupported("no closed-form integrals for this family")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub n: usize,
    pub nt: usize,
    pub h: f64,
    pub pf2_window: usize,
    pub residual_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n: 256, nt: 64, h: 1e-4, pf2_window: 16, residual_tol: 1e-8 }
    }
}

/// Everything that enters the stability hypotheses at one `(k, L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub family: FamilyId,
    pub k: f64,
    pub period: f64,
    pub c: f64,
    pub a: f64,
    pub dc_dk: f64,
    pub da_dk: f64,
    pub q: f64,
    pub v: f64,
    pub dq_dk: f64,
    pub dv_dk: f64,
    pub phi: f64,
    pub phi_error: f64,
    pub mk: f64,
    pub psi: f64,
    pub theta: Option<f64>,
    pub residual: f64,
    pub n_negative: usize,
    pub zero_simple: bool,
    pub pf2: Option<Pf2Verdict>,
    pub spectrum: Option<SpectrumReport>,
    /// H0..H4 (P0..P4 for the regularized families)
    pub flags: [bool; 5],
    /// stage failures, recorded instead of aborting
    pub errors: Vec<String>,
}

impl HypothesisReport {
    fn empty(family: FamilyId, k: f64, period: f64) -> Self {
        HypothesisReport {
            family,
            k,
            period,
            c: f64::NAN,
            a: f64::NAN,
            dc_dk: f64::NAN,
            da_dk: f64::NAN,
            q: f64::NAN,
            v: f64::NAN,
            dq_dk: f64::NAN,
            dv_dk: f64::NAN,
            phi: f64::NAN,
            phi_error: f64::NAN,
            mk: f64::NAN,
            psi: f64::NAN,
            theta: None,
            residual: f64::NAN,
            n_negative: 0,
            zero_simple: false,
            pf2: None,
            spectrum: None,
            flags: [false; 5],
            errors: Vec::new(),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }
}

/// Runs construction, residual, spectrum (with θ or PF(2) evidence), Φ and Ψ at `(k, L)`.
pub fn verify(family: FamilyId, k: f64, period: f64, config: &VerifyConfig) -> HypothesisReport {
    let mut rep = HypothesisReport::empty(family, k, period);
    let profile = match Modulus::new(k).and_then(|m| construct(family, m, period, config.n)) {
        Ok(p) => p,
        Err(e) => {
            rep.errors.push(e.to_string());
            return rep;
        }
    };
    let symbol = family.symbol();
    rep.c = profile.c;
    rep.a = profile.a;
    rep.residual = relative_residual(&profile);
    rep.flags[0] = rep.residual < config.residual_tol;

    let is_ilw = matches!(symbol.kind, SymbolKind::Ilw { .. });
    match assemble(&profile, &symbol, config.nt) {
        Ok(op) => {
            let report = eigs(&op, 6, None);
            rep.n_negative = report.n_negative;
            rep.zero_simple = report.h2_holds;
            rep.flags[1] = report.h1_holds;
            rep.flags[2] = report.h2_holds && report.zero_is_second();
            rep.spectrum = Some(report);
        }
        Err(e) => rep.errors.push(e.to_string()),
    }
    if is_ilw {
        if let FamilyId::Ilw { delta } = family {
            match ilw_pf2_window(profile.k, period, delta, config.pf2_window).and_then(|w| pf2_check(&w)) {
                Ok(v) => {
                    rep.flags[1] &= v.holds;
                    rep.flags[2] &= v.holds;
                    rep.pf2 = Some(v);
                }
                Err(e) => {
                    rep.flags[1] = false;
                    rep.flags[2] = false;
                    rep.errors.push(e.to_string());
                }
            }
        }
    } else {
        match neves_theta(&profile, family.regularized()) {
            Ok(t) => {
                rep.theta = Some(t);
                rep.flags[2] &= t < 0.0;
            }
            Err(e) => {
                rep.flags[2] = false;
                rep.errors.push(e.to_string());
            }
        }
    }

    let (q, v) = match charges(&profile) {
        Ok(qv) => qv,
        Err(e) => {
            rep.errors.push(e.to_string());
            return rep;
        }
    };
    rep.q = q;
    rep.v = v;
    match phi_value(family, k, period, config.n, config.h) {
        Ok(pv) => {
            let d = pv.derivatives;
            rep.dc_dk = d.dc.value;
            rep.da_dk = d.da.value;
            rep.dq_dk = d.dq.value;
            rep.dv_dk = d.dv.value;
            rep.phi = pv.phi;
            rep.phi_error = pv.error;
            rep.flags[3] = pv.phi < 0.0 && fabs(pv.phi) > 10.0 * pv.error;
            match mk_value(&profile.samples, d.dc.value, d.da.value, family.regularized(), &symbol, period) {
                Ok(mk) => {
                    rep.mk = mk;
                    rep.psi = mk + d.dc.value * q;
                    let psi_err = 2.0 * d.dc.error * fabs(q) + d.da.error * fabs(v);
                    rep.flags[4] = fabs(rep.psi) > 10.0 * psi_err && rep.psi != 0.0;
                }
                Err(e) => rep.errors.push(e.to_string()),
            }
        }
        Err(e) => rep.errors.push(e.to_string()),
    }
    rep
}
