mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use common::{am_bisect, e_quad, einc_quad, f_quad, k_quad, quad, rel};
use periwave_core::elliptic::*;
use periwave_core::Error;
use proptest::prelude::*;

fn m(k: f64) -> Modulus {
    Modulus::new(k).unwrap()
}

#[test]
fn complete_integrals_match_quadrature() {
    for i in 0..40 {
        let k = 0.99 * i as f64 / 39.0;
        assert!(rel(complete_k(m(k)), k_quad(k)) < 1e-14, "K at k = {k}");
        assert!(rel(complete_e(m(k)), e_quad(k)) < 1e-14, "E at k = {k}");
    }
}

#[test]
fn complete_integrals_at_zero() {
    assert_eq!(complete_k(m(0.0)), PI / 2.0);
    assert_relative_eq!(complete_e(m(0.0)), PI / 2.0, max_relative = 1e-15);
}

#[test]
fn modulus_domain() {
    assert!(matches!(Modulus::new(1.0), Err(Error::Domain(_))));
    assert!(matches!(Modulus::new(-0.1), Err(Error::Domain(_))));
    assert!(Modulus::new(0.0).unwrap().complement().is_err());
    let mc = m(0.6).complement().unwrap();
    assert_relative_eq!(mc.k(), 0.8, max_relative = 1e-15);
}

#[test]
fn incomplete_integrals_match_quadrature() {
    for &k in &[0.1, 0.5, 0.8, 0.95] {
        for j in 1..=12 {
            let w = 3.0 * j as f64 / 12.0;
            assert!(rel(incomplete_f(w, m(k)), f_quad(w, k)) < 1e-13, "F({w}, {k})");
            assert!(rel(incomplete_e(w, m(k)), einc_quad(w, k)) < 1e-13, "E({w}, {k})");
        }
    }
    // amplitudes beyond π/2 use quasi-periodicity
    let k = 0.7;
    assert_relative_eq!(incomplete_f(PI, m(k)), 2.0 * complete_k(m(k)), max_relative = 1e-14);
    assert_relative_eq!(incomplete_e(-PI, m(k)), -2.0 * complete_e(m(k)), max_relative = 1e-14);
}

#[test]
fn sn_matches_bisection_inverse() {
    for &k in &[0.2, 0.5, 0.9] {
        let kk = complete_k(m(k));
        for j in 1..10 {
            let u = kk * j as f64 / 10.0;
            let phi = am_bisect(u, k);
            let (sn, cn, dn) = jacobi_elliptic(u, m(k));
            assert!((sn - phi.sin()).abs() < 1e-12, "sn({u}, {k})");
            assert!((cn - phi.cos()).abs() < 1e-12, "cn({u}, {k})");
            assert!((dn - (1.0 - k * k * phi.sin().powi(2)).sqrt()).abs() < 1e-12, "dn({u}, {k})");
        }
    }
}

#[test]
fn sn_symmetries_and_periods() {
    let k = 0.75;
    let kk = complete_k(m(k));
    let (s, c, d) = jacobi_elliptic(kk, m(k));
    assert!((s - 1.0).abs() < 1e-14 && c.abs() < 1e-7 && (d - (1.0 - k * k).sqrt()).abs() < 1e-14);
    for &x in &[0.3, 1.1, 2.9] {
        let (s0, c0, d0) = jacobi_elliptic(x, m(k));
        let (s1, c1, d1) = jacobi_elliptic(x + 4.0 * kk, m(k));
        let (s2, c2, d2) = jacobi_elliptic(-x, m(k));
        assert!((s0 - s1).abs() < 1e-13 && (c0 - c1).abs() < 1e-13 && (d0 - d1).abs() < 1e-13);
        assert!((s0 + s2).abs() < 1e-14 && (c0 - c2).abs() < 1e-14 && (d0 - d2).abs() < 1e-14);
    }
    assert_eq!(jacobi_elliptic(0.4, m(0.0)), (0.4f64.sin(), 0.4f64.cos(), 1.0));
}

#[test]
fn zeta_matches_definition() {
    for &k in &[0.3, 0.7, 0.9] {
        let kk = complete_k(m(k));
        let ee = complete_e(m(k));
        for j in 1..8 {
            let u = kk * j as f64 / 8.0;
            let phi = am_bisect(u, k);
            let oracle = einc_quad(phi, k) - ee / kk * u;
            assert!((jacobi_zeta(u, m(k)) - oracle).abs() < 1e-12, "Z({u}, {k})");
        }
        assert!(jacobi_zeta(kk, m(k)).abs() < 1e-13);
        assert!(jacobi_zeta(2.0 * kk, m(k)).abs() < 1e-13);
        assert!((jacobi_zeta(0.4, m(k)) + jacobi_zeta(-0.4, m(k))).abs() < 1e-15);
        // 2K-periodic
        assert!((jacobi_zeta(0.4, m(k)) - jacobi_zeta(0.4 + 2.0 * kk, m(k))).abs() < 1e-13);
    }
}

#[test]
fn zeta_integrand_is_dn_squared() {
    // Z(1, 0.7) = ∫₀¹ (dn² − E/K)
    let k = 0.7;
    let ratio = complete_e(m(k)) / complete_k(m(k));
    let oracle = quad(
        |s| {
            let phi = am_bisect(s, k);
            1.0 - k * k * phi.sin().powi(2) - ratio
        },
        0.0,
        1.0,
        2,
    );
    assert!((jacobi_zeta(1.0, m(k)) - oracle).abs() < 1e-12);
}

#[test]
fn heuman_lambda_values() {
    for &k in &[0.1, 0.5, 0.9] {
        assert!((heuman_lambda(PI / 2.0, m(k)).unwrap() - 1.0).abs() < 1e-14);
        assert!(heuman_lambda(0.0, m(k)).unwrap().abs() < 1e-15);
        // Λ₀(w, k) = (2/π)[K E(w, k') − (K − E) F(w, k')] with quadrature pieces
        let kp = (1.0 - k * k).sqrt();
        for &w in &[0.2, 0.7, 1.3] {
            let (kk, ee) = (k_quad(k), e_quad(k));
            let oracle = 2.0 / PI * (kk * einc_quad(w, kp) - (kk - ee) * f_quad(w, kp));
            assert!((heuman_lambda(w, m(k)).unwrap() - oracle).abs() < 1e-13, "Λ₀({w}, {k})");
        }
    }
    // near k = 0, Λ₀(w, k) → sin w
    assert!((heuman_lambda(0.6, m(1e-9)).unwrap() - 0.6f64.sin()).abs() < 1e-12);
    assert!(heuman_lambda(2.0, m(0.5)).is_err());
}

#[test]
fn complete_pi_matches_quadrature() {
    for &k in &[0.3, 0.6, 0.9] {
        for &a2 in &[-3.0, -1.0, -0.25, 0.0, 0.05, 0.5 * k * k, 0.95 * k * k] {
            let oracle = quad(
                |t| {
                    let s2 = t.sin().powi(2);
                    1.0 / ((1.0 - a2 * s2) * (1.0 - k * k * s2).sqrt())
                },
                0.0,
                PI / 2.0,
                32,
            );
            let got = complete_pi(a2, m(k)).unwrap();
            assert!(rel(got, oracle) < 1e-12, "Π({a2}, {k}) = {got} vs {oracle}");
        }
        assert!(rel(complete_pi(0.0, m(k)).unwrap(), complete_k(m(k))) < 1e-14);
    }
}

#[test]
fn complete_pi_singular_cases() {
    let k = 0.5;
    assert!(matches!(complete_pi(0.25, m(k)), Err(Error::Singular(_))));
    assert!(matches!(complete_pi(1.0, m(k)), Err(Error::Singular(_))));
    assert!(complete_pi(0.5, m(k)).is_err());
}

#[test]
fn complete_pi_circular_closed_form() {
    // Π(α², k) = k²K/(k² − α²) − α² G(w, k)/√(α²(1 − α²)(α² − k²)),
    // w = asin(√(−α²/(k² − α²))), for α² < 0
    for &k in &[0.4, 0.8] {
        for &a2 in &[-0.3, -2.0] {
            let kk = complete_k(m(k));
            let w = ((-a2) / (k * k - a2)).sqrt().asin();
            let g = heuman_g(w, m(k)).unwrap();
            let via_g = k * k * kk / (k * k - a2) - a2 * g / (a2 * (1.0 - a2) * (a2 - k * k)).sqrt();
            assert!(rel(via_g, complete_pi(a2, m(k)).unwrap()) < 1e-12);
        }
    }
}

#[test]
fn carlson_reference_values() {
    // Carlson (1995) test values
    assert!(rel(carlson_rf(1.0, 2.0, 0.0), 1.3110287771461) < 1e-12);
    assert!(rel(carlson_rd(0.0, 2.0, 1.0), 1.7972103521034) < 1e-12);
    assert!(rel(carlson_rj(0.0, 1.0, 2.0, 3.0), 0.77688623778582) < 1e-12);
    assert!(carlson_rf(f64::NAN, 1.0, 2.0).is_nan());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pythagorean_identities(x in -40.0f64..40.0, k in 0.0f64..0.999) {
        let (s, c, d) = jacobi_elliptic(x, m(k));
        prop_assert!((s * s + c * c - 1.0).abs() < 1e-11);
        prop_assert!((d * d + k * k * s * s - 1.0).abs() < 1e-11);
    }

    #[test]
    fn legendre_relation(k in 0.001f64..0.999) {
        let k0 = m(k);
        let kc = k0.complement().unwrap();
        let (kk, ee, kkp, eep) = (complete_k(k0), complete_e(k0), complete_k(kc), complete_e(kc));
        prop_assert!((ee * kkp + eep * kk - kk * kkp - PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn f_inverts_amplitude(u in 0.0f64..1.5, k in 0.0f64..0.95) {
        let (s, c, _) = jacobi_elliptic(u, m(k));
        prop_assert!((incomplete_f(s.atan2(c), m(k)) - u).abs() < 1e-12);
    }
}
