use std::f64::consts::PI;

use periwave_core::elliptic::{complete_k, jacobi_elliptic, Modulus};
use periwave_core::families::*;
use periwave_core::spectral::*;
use periwave_core::Error;

const TP: f64 = 2.0 * PI;

fn m(k: f64) -> Modulus {
    Modulus::new(k).unwrap()
}

fn ten(lo: f64, hi: f64) -> Vec<f64> {
    (0..10).map(|i| lo + (hi - lo) * i as f64 / 9.0).collect()
}

fn low_spectrum(f: FamilyId, k: f64, l: f64, n: usize, nt: usize) -> (SpectrumReport, f64) {
    let (_, rep, defect) = spectrum_of(f, m(k), l, n, nt).unwrap();
    (rep, defect)
}

#[test]
fn derivative_of_profile_is_in_the_kernel() {
    let cases = [
        (FamilyId::KdvCnoidal, 0.9, TP),
        (FamilyId::MkdvDnoidal, 0.6, TP),
        (FamilyId::MkdvDnsn, 0.5, 30.0),
        (FamilyId::GardnerDn { a: 1.0, b: 1.0 }, 0.7, TP),
        (FamilyId::Ilw { delta: 1.0 }, 0.97, TP),
        (FamilyId::GardnerDnsn { a: 1.0, b: 1.0 }, 0.5, 10.0),
        (FamilyId::Schamel, 0.5, TP),
        (FamilyId::MbbmDnsn, 0.4, 30.0),
        (FamilyId::RegSchamel, 0.3, 50.0),
    ];
    for (f, k, l) in cases {
        let (_, defect) = low_spectrum(f, k, l, 256, 64);
        assert!(defect < 1e-6, "{}: defect {defect:e}", f.tag());
    }
}

#[test]
fn lame_values_match_galerkin() {
    for (f, lo, hi) in [(FamilyId::KdvCnoidal, 0.72, 0.98), (FamilyId::MkdvDnoidal, 0.05, 0.95)] {
        for k in ten(lo, hi) {
            let lame = lame_closed_form(f, m(k), TP).unwrap();
            let (rep, _) = low_spectrum(f, k, TP, 512, 128);
            for i in 0..3 {
                let scale = lame.lambda[0].abs().max(1.0);
                assert!(
                    (lame.lambda[i] - rep.eigenvalues[i]).abs() < 1e-9 * scale,
                    "{} k={k}: λ{i} {} vs {}",
                    f.tag(),
                    lame.lambda[i],
                    rep.eigenvalues[i]
                );
            }
            assert!(lame.lambda[1].abs() < 1e-9 * lame.lambda[0].abs());
        }
    }
}

#[test]
fn reg_schamel_lame_values_match_galerkin() {
    let kl = find_k_l(FamilyId::RegSchamel, 50.0).unwrap();
    for k in [0.1 * kl, 0.5 * kl, 0.9 * kl] {
        let lame = lame_closed_form(FamilyId::RegSchamel, m(k), 50.0).unwrap();
        let (rep, _) = low_spectrum(FamilyId::RegSchamel, k, 50.0, 1024, 256);
        for i in 0..3 {
            assert!(
                (lame.lambda[i] - rep.eigenvalues[i]).abs() < 1e-7 * lame.lambda[0].abs(),
                "k={k}: λ{i} {} vs {}",
                lame.lambda[i],
                rep.eigenvalues[i]
            );
        }
    }
}

#[test]
fn no_closed_form_outside_lame_families() {
    assert!(matches!(
        lame_closed_form(FamilyId::Schamel, m(0.5), TP),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn eigenvalues_converge_in_truncation() {
    let (a, _) = low_spectrum(FamilyId::KdvCnoidal, 0.9, TP, 512, 32);
    let (b, _) = low_spectrum(FamilyId::KdvCnoidal, 0.9, TP, 512, 128);
    for i in 0..5 {
        assert!((a.eigenvalues[i] - b.eigenvalues[i]).abs() < 1e-9 * b.eigenvalues[0].abs());
    }
}

#[test]
fn truncation_beyond_grid_is_rejected() {
    let p = construct(FamilyId::KdvCnoidal, m(0.9), TP, 64).unwrap();
    assert!(matches!(assemble(&p, &p.family.symbol(), 33), Err(Error::Resolution(_))));
}

#[test]
fn inertia_is_constant_along_families() {
    let kl = find_k_l(FamilyId::MbbmDnsn, 30.0).unwrap();
    let grids = [
        (FamilyId::KdvCnoidal, TP, ten(0.72, 0.98)),
        (FamilyId::MkdvDnoidal, TP, ten(0.05, 0.95)),
        (FamilyId::MkdvDnsn, 30.0, ten(0.05, 0.95)),
        (FamilyId::GardnerDnsn { a: 1.0, b: 1.0 }, 10.0, ten(0.05, 0.95)),
        (FamilyId::Schamel, TP, ten(0.05, 0.95)),
        (FamilyId::MbbmDnsn, 30.0, ten(0.05 * kl, 0.95 * kl)),
    ];
    for (f, l, ks) in grids {
        for k in ks {
            let (rep, _) = low_spectrum(f, k, l, 512, 128);
            assert_eq!(rep.n_negative, 1, "{} k={k}", f.tag());
            assert!(rep.h2_holds && rep.zero_is_second(), "{} k={k}: {:?}", f.tag(), rep.eigenvalues);
        }
    }
}

// θ by fixed-step RK4 on the explicit mKdV crest-centred profile β dn(βx), β = 2K/L,
// for which c = β²(2 − k²) and A = 0
fn theta_rk4(k: f64, l: f64, steps: usize) -> f64 {
    let md = m(k);
    let beta = 2.0 * complete_k(md) / l;
    let c = beta * beta * (2.0 - k * k);
    let pot = |x: f64| {
        let dn = jacobi_elliptic(beta * x, md).2;
        c - 6.0 * beta * beta * dn * dn
    };
    let d2 = beta * beta * beta * (-k * k);
    let rhs = |x: f64, y: [f64; 2]| [y[1], pot(x) * y[0]];
    let h = l / steps as f64;
    let mut y = [-1.0 / d2, 0.0];
    for i in 0..steps {
        let x = i as f64 * h;
        let k1 = rhs(x, y);
        let k2 = rhs(x + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
        let k3 = rhs(x + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
        let k4 = rhs(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for j in 0..2 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }
    y[1] / d2
}

#[test]
fn theta_matches_direct_shooting() {
    for k in [0.3, 0.6, 0.9] {
        let p = construct(FamilyId::MkdvDnoidal, m(k), TP, 512).unwrap();
        let theta = neves_theta(&p, false).unwrap();
        let oracle = theta_rk4(k, TP, 20000);
        assert!((theta - oracle).abs() < 1e-7 * oracle.abs(), "k={k}: {theta} vs {oracle}");
        assert!(theta < 0.0);
    }
}

#[test]
fn theta_is_negative_for_regularized_waves() {
    let kl = find_k_l(FamilyId::MbbmDnsn, 50.0).unwrap();
    for k in [0.2 * kl, 0.5 * kl, 0.8 * kl] {
        let p = construct(FamilyId::MbbmDnsn, m(k), 50.0, 1024).unwrap();
        assert!(neves_theta(&p, true).unwrap() < 0.0);
    }
}

#[test]
fn theta_rejects_nonlocal_dispersion() {
    let p = construct(FamilyId::Ilw { delta: 1.0 }, m(0.97), TP, 256).unwrap();
    assert!(matches!(neves_theta(&p, false), Err(Error::Unsupported(_))));
}

fn window(f: impl Fn(i64) -> f64, m: i64) -> Vec<f64> {
    (-m..=m).map(f).collect()
}

#[test]
fn pf2_accepts_log_concave_sequences() {
    let gauss = pf2_check(&window(|n| (-(n * n) as f64 / 7.0).exp(), 12)).unwrap();
    assert!(gauss.holds && gauss.min_relative_minor >= 0.0);
    let geometric = pf2_check(&window(|n| 0.6f64.powi(n.abs() as i32), 12)).unwrap();
    assert!(geometric.holds, "{geometric:?}");
    assert_eq!(geometric.window, 12);
}

#[test]
fn pf2_rejects_heavy_tails_and_sign_changes() {
    let cauchy = pf2_check(&window(|n| 1.0 / (1.0 + (n * n) as f64), 8)).unwrap();
    assert!(!cauchy.holds);
    assert!(matches!(cauchy.violation, Some(Pf2Violation::Minor { .. })));

    let signed = pf2_check(&window(|n| if n == 3 { 0.0 } else { 1.0 }, 5)).unwrap();
    assert!(!signed.holds);
    assert_eq!(signed.violation, Some(Pf2Violation::NonPositive { n: 3, value: 0.0 }));

    assert!(pf2_check(&[1.0, 2.0]).is_err());
}

#[test]
fn ilw_coefficients_are_pf2() {
    for k in [0.95, 0.97, 0.99] {
        let seq = ilw_pf2_window(m(k), TP, 1.0, 16).unwrap();
        let v = pf2_check(&seq).unwrap();
        assert!(v.holds, "k={k}: {v:?}");
        assert!(seq.iter().all(|&a| a > 0.0));
    }
}
