//! Elliptic integrals and Jacobi elliptic functions of real argument.
//!
//! Complete integrals and the Jacobi triple use the arithmetic-geometric
//! mean. Incomplete integrals and the complete third kind use Carlson's
//! symmetric forms, which are evaluated by the same duplication idea and
//! stay accurate right up to the quarter period.
//!
//! All functions take the modulus `k` (not the parameter `m = k²`).

use core::f64::consts::{FRAC_PI_2, PI};

use libm::{cos, fabs, round, sin, sqrt};

use crate::error::{Error, Result};

/// Elliptic modulus `k ∈ [0, 1)` together with its complement `k' = √(1 − k²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
    k_prime: f64,
}

impl Modulus {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) {
            return Err(Error::Domain(k));
        }
        // (1 - k)(1 + k) keeps k' accurate when k is close to one
        Ok(Modulus { k, k_prime: sqrt((1.0 - k) * (1.0 + k)) })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    /// The complementary modulus `k'` as a modulus in its own right. Fails for `k = 0`.
    pub fn complement(&self) -> Result<Modulus> {
        if self.k == 0.0 {
            return Err(Error::Domain(1.0));
        }
        Ok(Modulus { k: self.k_prime, k_prime: self.k })
    }

    pub fn complete_k(&self) -> f64 {
        complete_k(*self)
    }

    pub fn complete_e(&self) -> f64 {
        complete_e(*self)
    }
}

// a − b can stall at one ulp, hence the tolerance and the cap
const AGM_TOL: f64 = 4.0 * f64::EPSILON;
const AGM_MAX: usize = 64;

/// Complete integral of the first kind
///
/// ```text
///          π/2
///         ⌠           dθ
/// K(k) =  │  ─────────────────
///         ⌡  √(1 − k² sin²θ)
///         0
/// ```
///
/// computed as `π / (2 agm(1, k'))`.
pub fn complete_k(m: Modulus) -> f64 {
    let (mut a, mut b) = (1.0, m.k_prime);
    for _ in 0..AGM_MAX {
        if fabs(a - b) <= AGM_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = sqrt(a * b);
        a = an;
    }
    PI / (a + b)
}

/// Complete integral of the second kind `E(k) = ∫₀^{π/2} √(1 − k² sin²θ) dθ`.
pub fn complete_e(m: Modulus) -> f64 {
    let (mut a, mut b) = (1.0, m.k_prime);
    let mut sum = 0.5 * m.k * m.k;
    let mut pow2 = 0.5;
    for _ in 0..AGM_MAX {
        if fabs(a - b) <= AGM_TOL * a {
            break;
        }
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    (PI / (a + b)) * (1.0 - sum)
}

// duplication quarters the spread; non-finite input never converges
const CARLSON_MAX: usize = 100;

/// Carlson's symmetric integral `R_F(x, y, z)`, at most one argument zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 1e-3;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    for _ in 0..CARLSON_MAX {
        let (sx, sy, sz) = (sqrt(xt), sqrt(yt), sqrt(zt));
        let lambda = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lambda);
        yt = 0.25 * (yt + lambda);
        zt = 0.25 * (zt + lambda);
        let ave = (xt + yt + zt) / 3.0;
        let (dx, dy, dz) = ((ave - xt) / ave, (ave - yt) / ave, (ave - zt) / ave);
        if fabs(dx).max(fabs(dy)).max(fabs(dz)) <= ERRTOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / sqrt(ave);
        }
    }
    f64::NAN
}

/// Carlson's `R_D(x, y, z)`, the degenerate case `R_J(x, y, z, z)`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 1e-3;
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 6.0;
    const C3: f64 = 9.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.25 * C3;
    const C6: f64 = 1.5 * C4;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let (mut sum, mut fac) = (0.0, 1.0);
    for _ in 0..CARLSON_MAX {
        let (sx, sy, sz) = (sqrt(xt), sqrt(yt), sqrt(zt));
        let lambda = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lambda));
        fac *= 0.25;
        xt = 0.25 * (xt + lambda);
        yt = 0.25 * (yt + lambda);
        zt = 0.25 * (zt + lambda);
        let ave = 0.2 * (xt + yt + 3.0 * zt);
        let (dx, dy, dz) = ((ave - xt) / ave, (ave - yt) / ave, (ave - zt) / ave);
        if fabs(dx).max(fabs(dy)).max(fabs(dz)) <= ERRTOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let series = 1.0
                + ed * (-C1 + C5 * ed - C6 * dz * ee)
                + dz * (C2 * ee + dz * (-C3 * ec + dz * C4 * ea));
            return 3.0 * sum + fac * series / (ave * sqrt(ave));
        }
    }
    f64::NAN
}

fn carlson_rc(x: f64, y: f64) -> f64 {
    const ERRTOL: f64 = 8e-4;
    let (mut xt, mut yt) = (x, y);
    for _ in 0..CARLSON_MAX {
        let lambda = 2.0 * sqrt(xt) * sqrt(yt) + yt;
        xt = 0.25 * (xt + lambda);
        yt = 0.25 * (yt + lambda);
        let ave = (xt + yt + yt) / 3.0;
        let s = (yt - ave) / ave;
        if fabs(s) <= ERRTOL {
            return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / sqrt(ave);
        }
    }
    f64::NAN
}

/// Carlson's `R_J(x, y, z, p)` for `p > 0`.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    const ERRTOL: f64 = 1e-3;
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 3.0;
    const C3: f64 = 3.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.75 * C3;
    const C6: f64 = 1.5 * C4;
    const C7: f64 = 0.5 * C2;
    const C8: f64 = C3 + C3;
    let (mut xt, mut yt, mut zt, mut pt) = (x, y, z, p);
    let (mut sum, mut fac) = (0.0, 1.0);
    for _ in 0..CARLSON_MAX {
        let (sx, sy, sz) = (sqrt(xt), sqrt(yt), sqrt(zt));
        let lambda = sx * (sy + sz) + sy * sz;
        let alpha = pt * (sx + sy + sz) + sx * sy * sz;
        let beta = pt * (pt + lambda) * (pt + lambda);
        sum += fac * carlson_rc(alpha * alpha, beta);
        fac *= 0.25;
        xt = 0.25 * (xt + lambda);
        yt = 0.25 * (yt + lambda);
        zt = 0.25 * (zt + lambda);
        pt = 0.25 * (pt + lambda);
        let ave = 0.2 * (xt + yt + zt + pt + pt);
        let (dx, dy, dz, dp) =
            ((ave - xt) / ave, (ave - yt) / ave, (ave - zt) / ave, (ave - pt) / ave);
        if fabs(dx).max(fabs(dy)).max(fabs(dz)).max(fabs(dp)) <= ERRTOL {
            let ea = dx * (dy + dz) + dy * dz;
            let eb = dx * dy * dz;
            let ec = dp * dp;
            let ed = ea - 3.0 * ec;
            let ee = eb + 2.0 * dp * (ea - ec);
            let series = 1.0
                + ed * (-C1 + C5 * ed - C6 * ee)
                + eb * (C7 + dp * (-C8 + dp * C4))
                + dp * ea * (C2 - dp * C3)
                - C2 * dp * ec;
            return 3.0 * sum + fac * series / (ave * sqrt(ave));
        }
    }
    f64::NAN
}

// Splits w = jπ + r with |r| ≤ π/2.
fn reduce_amplitude(w: f64) -> (f64, f64) {
    let j = round(w / PI);
    (j, w - j * PI)
}

/// Incomplete integral of the first kind `F(w, k) = ∫₀^w dθ / √(1 − k² sin²θ)` for any real `w`.
pub fn incomplete_f(w: f64, m: Modulus) -> f64 {
    let (j, r) = reduce_amplitude(w);
    let (s, c) = (sin(r), cos(r));
    let ks = m.k * s;
    let part = s * carlson_rf(c * c, (1.0 - ks) * (1.0 + ks), 1.0);
    if j == 0.0 {
        part
    } else {
        2.0 * j * complete_k(m) + part
    }
}

/// Incomplete integral of the second kind `E(w, k) = ∫₀^w √(1 − k² sin²θ) dθ` for any real `w`.
pub fn incomplete_e(w: f64, m: Modulus) -> f64 {
    let (j, r) = reduce_amplitude(w);
    let (s, c) = (sin(r), cos(r));
    let part = second_kind_from_sc(s, c, m.k);
    if j == 0.0 {
        part
    } else {
        2.0 * j * complete_e(m) + part
    }
}

// E(φ, k) from sin φ and cos φ, |φ| ≤ π/2.
fn second_kind_from_sc(s: f64, c: f64, k: f64) -> f64 {
    let ks = k * s;
    let (x, y) = (c * c, (1.0 - ks) * (1.0 + ks));
    s * (carlson_rf(x, y, 1.0) - ks * ks * carlson_rd(x, y, 1.0) / 3.0)
}

/// Jacobi elliptic functions `(sn, cn, dn)` of real argument.
///
/// Gauss descent (Bulirsch's form) after reducing `x` modulo the real period `4K`.
pub fn jacobi_elliptic(x: f64, m: Modulus) -> (f64, f64, f64) {
    if m.k == 0.0 {
        return (sin(x), cos(x), 1.0);
    }
    let period = 4.0 * complete_k(m);
    let u = x - period * round(x / period);
    sncndn(u, m.k_prime * m.k_prime)
}

fn sncndn(uu: f64, emmc: f64) -> (f64, f64, f64) {
    const CA: f64 = 1e-8;
    let mut em = [0.0; 16];
    let mut en = [0.0; 16];
    let mut emc = emmc;
    let mut a = 1.0;
    let mut dn = 1.0;
    let mut c = 1.0;
    let mut l = 0;
    for i in 0..16 {
        l = i;
        em[i] = a;
        emc = sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if fabs(a - emc) <= CA * a {
            break;
        }
        emc *= a;
        a = c;
    }
    let u = uu * c;
    let mut sn = sin(u);
    let mut cn = cos(u);
    if sn != 0.0 {
        let mut a = cn / sn;
        c *= a;
        for ii in (0..=l).rev() {
            let b = em[ii];
            a *= c;
            c *= dn;
            dn = (en[ii] + a) / (b + a);
            a = c / b;
        }
        let a = 1.0 / sqrt(c * c + 1.0);
        sn = if sn >= 0.0 { a } else { -a };
        cn = c * sn;
    }
    (sn, cn, dn)
}

/// Jacobi Zeta function `Z(x, k) = ∫₀ˣ (dn²(s, k) − E/K) ds`, which equals
/// `E(am x, k) − (E/K) x`. It is odd, `2K`-periodic and has zero mean.
pub fn jacobi_zeta(x: f64, m: Modulus) -> f64 {
    if m.k == 0.0 {
        return 0.0;
    }
    let kk = complete_k(m);
    let u = x - 2.0 * kk * round(x / (2.0 * kk));
    let (sn, cn, _) = sncndn(u, m.k_prime * m.k_prime);
    // for |u| ≤ K the amplitude lies in [−π/2, π/2], so (sn, cn) are its sine and cosine
    second_kind_from_sc(sn, cn, m.k) - complete_e(m) / kk * u
}

/// The combination `G(w, k) = K E(w, k') − K F(w, k') + E F(w, k')`.
pub fn heuman_g(w: f64, m: Modulus) -> Result<f64> {
    let mc = m.complement()?;
    let (kk, ee) = (complete_k(m), complete_e(m));
    let (fw, ew) = (incomplete_f(w, mc), incomplete_e(w, mc));
    Ok(kk * ew - kk * fw + ee * fw)
}

/// Heuman's Lambda function `Λ₀(w, k) = (2/π) G(w, k)` for `w ∈ [0, π/2]`.
pub fn heuman_lambda(w: f64, m: Modulus) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&w) {
        return Err(Error::Invalid(alloc::format!("amplitude {w} outside [0, π/2]")));
    }
    Ok(heuman_g(w, m)? / FRAC_PI_2)
}

/// Complete integral of the third kind
///
/// ```text
///               K                        π/2
///              ⌠        ds              ⌠                 dθ
/// Π(α², k) =   │  ───────────────   =   │  ────────────────────────────────
///              ⌡  1 − α² sn²(s, k)      ⌡  (1 − α² sin²θ) √(1 − k² sin²θ)
///              0                        0
/// ```
///
/// for `α² < k²` (negative `α²` allowed), evaluated as
/// `R_F(0, k'², 1) + (α²/3) R_J(0, k'², 1, 1 − α²)`.
pub fn complete_pi(alpha2: f64, m: Modulus) -> Result<f64> {
    let k2 = m.k * m.k;
    if alpha2 == k2 || alpha2 == 1.0 {
        return Err(Error::Singular("characteristic equal to k² or 1"));
    }
    if alpha2 > k2 {
        return Err(Error::Invalid(alloc::format!(
            "characteristic {alpha2} not below k² = {k2}"
        )));
    }
    let kp2 = m.k_prime * m.k_prime;
    Ok(carlson_rf(0.0, kp2, 1.0) + alpha2 / 3.0 * carlson_rj(0.0, kp2, 1.0, 1.0 - alpha2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_outside_unit_interval_is_a_domain_error() {
        for k in [1.0, 1.5, -1e-3, f64::NAN, f64::INFINITY] {
            assert!(matches!(Modulus::new(k), Err(Error::Domain(_))), "k = {k}");
        }
        assert!(Modulus::new(0.0).is_ok());
    }

    #[test]
    fn complete_pi_singular_and_out_of_range() {
        let m = Modulus::new(0.6).unwrap();
        assert!(matches!(complete_pi(0.36, m), Err(Error::Singular(_))));
        assert!(matches!(complete_pi(0.5, m), Err(Error::Invalid(_))));
        // Π(0, k) = K(k)
        assert!((complete_pi(0.0, m).unwrap() - complete_k(m)).abs() < 1e-14);
    }

    #[test]
    fn heuman_lambda_amplitude_range() {
        let m = Modulus::new(0.4).unwrap();
        assert!(heuman_lambda(-0.1, m).is_err());
        assert!(heuman_lambda(2.0, m).is_err());
        assert!(heuman_lambda(0.0, m).unwrap().abs() < 1e-15);
        // the complement of k = 0 does not exist
        assert!(heuman_g(0.3, Modulus::new(0.0).unwrap()).is_err());
    }

    #[test]
    fn carlson_propagates_non_finite_input() {
        assert!(carlson_rf(1.0, f64::INFINITY, 2.0).is_nan());
        assert!(carlson_rd(f64::NAN, 1.0, 2.0).is_nan());
        assert!(carlson_rj(0.0, 1.0, 2.0, f64::NAN).is_nan());
    }

    #[test]
    fn circular_limit() {
        let m = Modulus::new(0.0).unwrap();
        let (s, c, d) = jacobi_elliptic(0.7, m);
        assert!((s - libm::sin(0.7)).abs() < 1e-15 && (c - libm::cos(0.7)).abs() < 1e-15 && d == 1.0);
        assert!(jacobi_zeta(0.7, m).abs() < 1e-15);
    }
}
