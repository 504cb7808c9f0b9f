//! Closed-form periodic traveling waves and their speed/constant maps.
//!
//! Every profile solves `(M + c)φ − f(φ) + A = 0`, or for the regularized
//! equations `cMφ + (c − 1)φ − f(φ) + A = 0`, on a period-`L` grid.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::{exp, fabs, pow, sinh, sqrt};
use num_complex::Complex64;

use crate::elliptic::{complete_k, jacobi_elliptic, jacobi_zeta, Modulus};
use crate::error::{Error, Result};
use crate::fourier::{grid, integrate, Fft};
use crate::nonlinearity::Nonlinearity;
use crate::symbol::SymbolSpec;

pub const K_STAR: f64 = FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyId {
    KdvCnoidal,
    MkdvDnoidal,
    MkdvDnsn,
    GardnerDn { a: f64, b: f64 },
    GardnerDnsn { a: f64, b: f64 },
    Ilw { delta: f64 },
    Schamel,
    MbbmDnsn,
    RegSchamel,
}

impl FamilyId {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyId::KdvCnoidal => "kdv_cnoidal",
            FamilyId::MkdvDnoidal => "mkdv_dnoidal",
            FamilyId::MkdvDnsn => "mkdv_dnsn",
            FamilyId::GardnerDn { .. } => "gardner_dn",
            FamilyId::GardnerDnsn { .. } => "gardner_dnsn",
            FamilyId::Ilw { .. } => "ilw",
            FamilyId::Schamel => "schamel",
            FamilyId::MbbmDnsn => "mbbm_dnsn",
            FamilyId::RegSchamel => "reg_schamel",
        }
    }

    pub fn regularized(&self) -> bool {
        matches!(self, FamilyId::MbbmDnsn | FamilyId::RegSchamel)
    }

    pub fn symbol(&self) -> SymbolSpec {
        match *self {
            FamilyId::Ilw { delta } => SymbolSpec {
                kind: crate::symbol::SymbolKind::Ilw { delta },
                gamma: 0.0,
                s1: 1.0,
                s2: 1.0,
            },
            _ => SymbolSpec::neg_second_derivative(),
        }
    }

    pub fn nonlinearity(&self) -> Nonlinearity {
        match *self {
            FamilyId::KdvCnoidal => Nonlinearity::kdv(),
            FamilyId::MkdvDnoidal | FamilyId::MkdvDnsn => Nonlinearity::mkdv(),
            FamilyId::GardnerDn { a, b } | FamilyId::GardnerDnsn { a, b } => {
                Nonlinearity::gardner(a, b)
            }
            FamilyId::Ilw { .. } => Nonlinearity::ilw(),
            FamilyId::Schamel | FamilyId::RegSchamel => Nonlinearity::schamel(),
            FamilyId::MbbmDnsn => Nonlinearity::mbbm(),
        }
    }

    /// Smallest admissible period for the regularized families.
    pub fn minimal_period(&self) -> Option<f64> {
        match self {
            FamilyId::MbbmDnsn => Some(2.0 * PI),
            FamilyId::RegSchamel => Some(4.0 * PI),
            _ => None,
        }
    }

    /// The mKdV family a Gardner family is conjugate to.
    pub fn mkdv_partner(&self) -> Option<FamilyId> {
        match self {
            FamilyId::GardnerDn { .. } => Some(FamilyId::MkdvDnoidal),
            FamilyId::GardnerDnsn { .. } => Some(FamilyId::MkdvDnsn),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FamilyId::GardnerDn { a, b } | FamilyId::GardnerDnsn { a, b } => {
                if !(b > 0.0) || !a.is_finite() {
                    return Err(Error::Unsupported("Gardner families require b > 0"));
                }
            }
            FamilyId::Ilw { delta } => {
                SymbolSpec::ilw(delta)?;
            }
            _ => {}
        }
        Ok(())
    }
}

/// Family metadata recorded next to the samples.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FamilyAux {
    pub beta2: Option<f64>,
    pub g: Option<f64>,
    pub r: Option<f64>,
    pub m_tilde: Option<f64>,
    /// α₁ < α₃ < α₄, nonzero roots of the first-integral quartic (α₂ = 0).
    pub roots: Option<[f64; 3]>,
    pub k_l: Option<f64>,
}

/// A sampled periodic traveling wave.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveProfile {
    pub family: FamilyId,
    pub k: Modulus,
    pub period: f64,
    pub c: f64,
    pub a: f64,
    pub n: usize,
    pub samples: Vec<f64>,
    pub fourier: Vec<Complex64>,
    pub aux: FamilyAux,
}

impl WaveProfile {
    pub fn x(&self) -> Vec<f64> {
        grid(self.period, self.n)
    }

    /// Sup norm of the samples.
    pub fn scale(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(fabs(*v)))
    }
}

// √(k⁴ − k² + 1)
fn quartic_root(k: f64) -> f64 {
    sqrt(k * k * k * k - k * k + 1.0)
}

fn beta2(k: f64) -> f64 {
    quartic_root(k) + k * k - 1.0
}

fn g_of_k(k: f64) -> f64 {
    sqrt(quartic_root(k) - k * k + 0.5)
}

fn r_of_k(k: f64) -> f64 {
    sqrt(2.0 * quartic_root(k) + 2.0 * k * k - 1.0)
}

fn regularized_denominator(family: FamilyId, k: Modulus, period: f64) -> f64 {
    let kk = complete_k(k);
    let s = quartic_root(k.k());
    let factor = if family == FamilyId::MbbmDnsn { 16.0 } else { 64.0 };
    period * period - factor * kk * kk * s
}

/// Upper end `k_L` of the admissible interval of a regularized family,
/// the root of `L² = 16K²√(k⁴−k²+1)` (mBBM) or `L² = 64K²√(k⁴−k²+1)` (regularized Schamel).
///
/// When the root lies closer to one than the spacing of doubles below one,
/// every representable `k < 1` is admissible and `1.0` is returned.
pub fn find_k_l(family: FamilyId, period: f64) -> Result<f64> {
    let lmin = family
        .minimal_period()
        .ok_or(Error::Unsupported("k_L exists only for the regularized families"))?;
    if !(period > lmin) {
        return Err(Error::PeriodTooSmall(format!(
            "{} needs L > {lmin:.6}, got {period}",
            family.tag()
        )));
    }
    let h = |k: f64| regularized_denominator(family, Modulus::new(k).expect("k in [0,1)"), period);
    let (mut lo, mut hi) = (0.0, 1.0 - f64::EPSILON / 2.0);
    if h(hi) > 0.0 {
        return Ok(1.0);
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn not_admissible(family: FamilyId, msg: String) -> Error {
    Error::Admissibility(format!("{}: {msg}", family.tag()))
}

fn check_open_unit(family: FamilyId, k: Modulus) -> Result<()> {
    if k.k() <= 0.0 {
        return Err(not_admissible(family, String::from("k must lie in (0, 1)")));
    }
    Ok(())
}

struct IlwData {
    kk: f64,
    kkp: f64,
    v: f64,
    mc: Modulus,
}

fn ilw_data(k: Modulus, period: f64, delta: f64) -> Result<IlwData> {
    let mc = k.complement()?;
    let kk = complete_k(k);
    Ok(IlwData { kk, kkp: complete_k(mc), v: 2.0 * kk * delta / period, mc })
}

fn ilw_speed(d: &IlwData, period: f64, delta: f64) -> f64 {
    let alpha = 2.0 * d.v;
    let (sn, cn, dn) = jacobi_elliptic(alpha, d.mc);
    1.0 / delta
        - 8.0 * PI * delta * d.kk / (period * period * d.kkp)
        - (4.0 * d.kk / period) * (jacobi_zeta(alpha, d.mc) + cn * dn / sn)
}

fn ilw_samples(d: &IlwData, k: Modulus, period: f64, delta: f64, n: usize) -> Vec<f64> {
    let (s, c, dd) = jacobi_elliptic(d.v, d.mc);
    let lead = 4.0 * d.kk / period;
    let base = -lead * jacobi_zeta(d.v, d.mc) - 4.0 * delta * PI / (period * period) * d.kk / d.kkp;
    grid(period, n)
        .iter()
        .map(|&x| {
            let (_, _, dn) = jacobi_elliptic(2.0 * d.kk * x / period, k);
            let dn2 = dn * dn;
            base + lead * dn2 * s * c * dd / (1.0 - dn2 * s * s)
        })
        .collect()
}

/// Exact Fourier coefficients of the ILW profile, `φ̂(0) = 0` and
/// `φ̂(m) = (2π/L) sinh(2πmδ/L) / sinh(mπK'/K)` otherwise.
pub fn ilw_fourier_coefficient(k: Modulus, period: f64, delta: f64, m: i64) -> Result<f64> {
    let d = ilw_data(k, period, delta)?;
    if m == 0 {
        return Ok(0.0);
    }
    let mm = fabs(m as f64);
    let a = 2.0 * PI * mm * delta / period;
    let b = mm * PI * d.kkp / d.kk;
    // sinh(a)/sinh(b) without overflow
    let ratio = if b > 30.0 {
        exp(a - b) * (1.0 - exp(-2.0 * a)) / (1.0 - exp(-2.0 * b))
    } else {
        sinh(a) / sinh(b)
    };
    Ok(2.0 * PI / period * ratio)
}

/// The `m → 0` limit of the ILW coefficient formula, the mean of the positive
/// Galilean representative of the profile.
pub fn ilw_positive_mean(k: Modulus, period: f64, delta: f64) -> Result<f64> {
    let d = ilw_data(k, period, delta)?;
    Ok(2.0 * PI / period * (2.0 * PI * delta / period) / (PI * d.kkp / d.kk))
}

fn mkdv_dnsn_constants(k: Modulus, period: f64) -> (f64, f64) {
    let kk = complete_k(k);
    let kv = k.k();
    let s = quartic_root(kv);
    let c = 16.0 * kk * kk / (period * period) * s;
    let a = -32.0 * kk * kk * kk / (3.0 * sqrt(3.0) * period * period * period)
        * (s - 2.0 * kv * kv + 1.0)
        * r_of_k(kv);
    (c, a)
}

/// Speed `c` and integration constant `A` of a family at `(k, L)`.
pub fn wave_constants(family: FamilyId, k: Modulus, period: f64) -> Result<(f64, f64)> {
    family.validate()?;
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::Invalid(format!("period {period} must be positive")));
    }
    let kv = k.k();
    let kk = complete_k(k);
    let l2 = period * period;
    match family {
        FamilyId::KdvCnoidal => {
            if kv <= K_STAR {
                return Err(not_admissible(
                    family,
                    format!("k = {kv} below k* = {K_STAR:.16} (speed must be positive)"),
                ));
            }
            let b = 2.0 * kk / period;
            let b2 = b * b;
            Ok((4.0 * b2 * (2.0 * kv * kv - 1.0), 24.0 * b2 * b2 * kv * kv * (1.0 - kv * kv)))
        }
        FamilyId::MkdvDnoidal => {
            check_open_unit(family, k)?;
            let a = 2.0 * kk / period;
            Ok((a * a * (2.0 - kv * kv), 0.0))
        }
        FamilyId::MkdvDnsn => {
            check_open_unit(family, k)?;
            Ok(mkdv_dnsn_constants(k, period))
        }
        FamilyId::GardnerDn { a, b } => {
            check_open_unit(family, k)?;
            let c = 4.0 * kk * kk / l2 * (2.0 - kv * kv) - a * a / (4.0 * b);
            let big_a = 2.0 * a * kk * kk / (b * l2) * (2.0 - kv * kv) - a * a * a / (24.0 * b * b);
            gardner_admissible(family, c)?;
            Ok((c, big_a))
        }
        FamilyId::GardnerDnsn { a, b } => {
            check_open_unit(family, k)?;
            let s = quartic_root(kv);
            let c = 16.0 * kk * kk / l2 * s - a * a / (4.0 * b);
            let big_a = 8.0 * a * kk * kk / (b * l2) * s
                - 32.0 * sqrt(2.0) * kk * kk * kk * r_of_k(kv) * (s - 2.0 * kv * kv + 1.0)
                    / (3.0 * sqrt(b) * l2 * period)
                - a * a * a / (24.0 * b * b);
            gardner_admissible(family, c)?;
            Ok((c, big_a))
        }
        FamilyId::Ilw { delta } => {
            check_open_unit(family, k)?;
            let d = ilw_data(k, period, delta)?;
            // the coefficients decay like exp(−m(πK'/K − 2πδ/L)); no decay means a pole
            if d.v >= d.kkp {
                return Err(not_admissible(
                    family,
                    format!("2δK/L = {:.6e} not below K' = {:.6e}: profile is singular", d.v, d.kkp),
                ));
            }
            let c = ilw_speed(&d, period, delta);
            if !(c > 0.0) {
                return Err(not_admissible(
                    family,
                    format!("speed c(k) = {c:.6e} not positive at k = {kv}, L = {period}, δ = {delta}"),
                ));
            }
            // A = (1/L)∫φ² by Parseval on the exact coefficients
            let mut a = 0.0;
            for m in 1..4096 {
                let term = ilw_fourier_coefficient(k, period, delta, m)?;
                a += 2.0 * term * term;
                if term * term < 1e-18 * a {
                    break;
                }
            }
            Ok((c, a))
        }
        FamilyId::Schamel => {
            check_open_unit(family, k)?;
            let s = quartic_root(kv);
            let k2 = kv * kv;
            let c = 64.0 * kk * kk / l2 * s;
            let a = 204800.0 * pow(kk, 6.0) / (27.0 * l2 * l2 * l2)
                * (-2.0 * k2 * k2 * k2 + 3.0 * k2 * k2 + 3.0 * k2 - 2.0 - 2.0 * s * s * s);
            Ok((c, a))
        }
        FamilyId::MbbmDnsn | FamilyId::RegSchamel => {
            check_open_unit(family, k)?;
            let k_l = find_k_l(family, period)?;
            if kv >= k_l {
                return Err(not_admissible(
                    family,
                    format!("k = {kv} not below k_L({period}) = {k_l:.12}"),
                ));
            }
            let mt = regularized_denominator(family, k, period);
            let c = l2 / mt;
            let s = quartic_root(kv);
            let a = if family == FamilyId::MbbmDnsn {
                let r = r_of_k(kv);
                16.0 * c * sqrt(c) * kk * kk * kk * (r * r * r * r - 9.0)
                    / (3.0 * sqrt(6.0) * period * l2 * r)
            } else {
                let q = 2.0 * kv * kv - 1.0;
                -204800.0 * pow(kk, 6.0) / (27.0 * mt * mt * mt) * ((s - q) * (s - q) * (2.0 * s + q))
            };
            Ok((c, a))
        }
    }
}

fn gardner_admissible(family: FamilyId, c: f64) -> Result<()> {
    if !(c > 0.0) {
        return Err(not_admissible(
            family,
            format!("speed c = {c:.6e} not positive (need 4K²/L²-type term above a²/4b)"),
        ));
    }
    Ok(())
}

/// Closed-form profile of `family` at `(k, L)` on an `N`-point grid.
pub fn construct(family: FamilyId, k: Modulus, period: f64, n: usize) -> Result<WaveProfile> {
    if n < 64 || !n.is_power_of_two() {
        return Err(Error::Invalid(format!("grid size {n} must be a power of two ≥ 64")));
    }
    let (c, a_const) = wave_constants(family, k, period)?;
    let kv = k.k();
    let kk = complete_k(k);
    let x = grid(period, n);
    let y: Vec<f64> = x.iter().map(|&x| 2.0 * kk * x / period).collect();
    let mut aux = FamilyAux::default();
    let samples: Vec<f64> = match family {
        FamilyId::KdvCnoidal => {
            let b = 2.0 * kk / period;
            y.iter()
                .map(|&y| {
                    let (_, cn, _) = jacobi_elliptic(y, k);
                    12.0 * kv * kv * b * b * cn * cn
                })
                .collect()
        }
        FamilyId::MkdvDnoidal => {
            let a = 2.0 * kk / period;
            y.iter().map(|&y| a * jacobi_elliptic(y, k).2).collect()
        }
        FamilyId::GardnerDn { a, b } => {
            let amp = 2.0 * sqrt(6.0) * kk / (sqrt(b) * period);
            y.iter().map(|&y| amp * jacobi_elliptic(y, k).2 - a / (2.0 * b)).collect()
        }
        FamilyId::MkdvDnsn | FamilyId::GardnerDnsn { .. } | FamilyId::MbbmDnsn => {
            let b2 = beta2(kv);
            let g = g_of_k(kv);
            aux.beta2 = Some(b2);
            aux.g = Some(g);
            aux.r = Some(r_of_k(kv));
            let (amp, offset) = match family {
                FamilyId::MkdvDnsn => (4.0 * kk / (sqrt(2.0) * g * period), 0.0),
                FamilyId::GardnerDnsn { a, b } => {
                    (4.0 * sqrt(3.0) * kk / (g * sqrt(b) * period), -a / (2.0 * b))
                }
                _ => (4.0 * sqrt(c) * kk / (g * period), 0.0),
            };
            if family == FamilyId::MkdvDnsn {
                aux.roots = Some(mkdv_dnsn_roots(k, period, c, a_const));
            }
            if family == FamilyId::MbbmDnsn {
                aux.k_l = Some(find_k_l(family, period)?);
            }
            y.iter()
                .map(|&y| {
                    let (sn, _, dn) = jacobi_elliptic(y, k);
                    amp * dn * dn / (1.0 + b2 * sn * sn) + offset
                })
                .collect()
        }
        FamilyId::Ilw { delta } => {
            let d = ilw_data(k, period, delta)?;
            ilw_samples(&d, k, period, delta, n)
        }
        FamilyId::Schamel => {
            let s = quartic_root(kv);
            let pre = 6400.0 * pow(kk, 4.0) / (9.0 * pow(period, 4.0));
            y.iter()
                .map(|&y| {
                    let (_, cn, _) = jacobi_elliptic(y, k);
                    let inner = 1.0 - 2.0 * kv * kv + s + 3.0 * kv * kv * cn * cn;
                    pre * inner * inner
                })
                .collect()
        }
        FamilyId::RegSchamel => {
            let mt = regularized_denominator(family, k, period);
            aux.m_tilde = Some(mt);
            aux.k_l = Some(find_k_l(family, period)?);
            let base = 5.0 / 12.0
                * ((period * period - 64.0 * (2.0 * kv * kv - 1.0) * kk * kk) / mt - 1.0);
            let amp = 80.0 * kv * kv * kk * kk / mt;
            y.iter()
                .map(|&y| {
                    let (_, cn, _) = jacobi_elliptic(y, k);
                    let inner = base + amp * cn * cn;
                    inner * inner
                })
                .collect()
        }
    };
    if family.nonlinearity().needs_positivity() && samples.iter().any(|&v| v < 0.0) {
        return Err(Error::Invalid(format!("{} profile has negative samples", family.tag())));
    }
    let fft = Fft::new(n)?;
    let fourier = fft.coefficients(&samples);
    Ok(WaveProfile { family, k, period, c, a: a_const, n, samples, fourier, aux })
}

// Closed-form nonzero roots of P(φ) = −φ⁴ + cφ² + 2Aφ, Newton-polished.
fn mkdv_dnsn_roots(k: Modulus, period: f64, c: f64, a: f64) -> [f64; 3] {
    let kk = complete_k(k);
    let kv = k.k();
    let s = quartic_root(kv);
    let p = sqrt(2.0 * s + 1.0 - 2.0 * kv * kv);
    let q = sqrt(2.0 * s - 1.0 + 2.0 * kv * kv);
    let w = 2.0 * kk / period;
    let raw = [-w * (p + q / sqrt(3.0)), w * (p - q / sqrt(3.0)), 2.0 * w * q / sqrt(3.0)];
    raw.map(|mut r| {
        for _ in 0..8 {
            let val = -r * r * r * r + c * r * r + 2.0 * a * r;
            let der = -4.0 * r * r * r + 2.0 * c * r + 2.0 * a;
            if der == 0.0 {
                break;
            }
            let step = val / der;
            r -= step;
            if fabs(step) <= 1e-16 * fabs(r) {
                break;
            }
        }
        r
    })
}

/// `T v = √(b/6)(v + a/2b)`, mapping Gardner states to focusing mKdV states.
pub fn gardner_forward(v: &[f64], a: f64, b: f64) -> Result<Vec<f64>> {
    if !(b > 0.0) {
        return Err(Error::Unsupported("Gardner transform implemented for b > 0 only"));
    }
    let s = sqrt(b / 6.0);
    Ok(v.iter().map(|&x| s * (x + a / (2.0 * b))).collect())
}

/// `T⁻¹ u = √(6/b) u − a/2b`.
pub fn gardner_inverse(u: &[f64], a: f64, b: f64) -> Result<Vec<f64>> {
    if !(b > 0.0) {
        return Err(Error::Unsupported("Gardner transform implemented for b > 0 only"));
    }
    let s = sqrt(6.0 / b);
    Ok(u.iter().map(|&x| s * x - a / (2.0 * b)).collect())
}

/// mKdV `(c, A)` to Gardner `(c̃, Ã)`.
pub fn gardner_constants_from_mkdv(c: f64, big_a: f64, a: f64, b: f64) -> (f64, f64) {
    (c - a * a / (4.0 * b), sqrt(6.0 / b) * big_a + c * a / (2.0 * b) - a * a * a / (24.0 * b * b))
}

/// Gardner `(c̃, Ã)` back to mKdV `(c, A)`.
pub fn mkdv_constants_from_gardner(ct: f64, at: f64, a: f64, b: f64) -> (f64, f64) {
    (
        ct + a * a / (4.0 * b),
        sqrt(b / 6.0) * (-ct * a / (2.0 * b) - a * a * a / (12.0 * b * b) + at),
    )
}

/// Sup norm of the profile-equation defect, with `M` applied spectrally.
pub fn residual(profile: &WaveProfile, symbol: &SymbolSpec) -> f64 {
    let fft = Fft::new(profile.n).expect("profile grid is a power of two");
    let mphi = symbol.apply(&fft, &profile.samples, profile.period);
    let f = profile.family.nonlinearity();
    let (c, a) = (profile.c, profile.a);
    let reg = profile.family.regularized();
    profile
        .samples
        .iter()
        .zip(&mphi)
        .map(|(&p, &mp)| {
            let r = if reg {
                c * mp + (c - 1.0) * p - f.f(p) + a
            } else {
                mp + c * p - f.f(p) + a
            };
            fabs(r)
        })
        .fold(0.0, f64::max)
}

/// Residual divided by the profile's sup norm.
pub fn relative_residual(profile: &WaveProfile) -> f64 {
    residual(profile, &profile.family.symbol()) / profile.scale().max(f64::MIN_POSITIVE)
}

/// Mean of the profile, `(1/L)∫φ`.
pub fn profile_mean(profile: &WaveProfile) -> f64 {
    integrate(&profile.samples, profile.period) / profile.period
}
