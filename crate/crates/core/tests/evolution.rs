use std::f64::consts::PI;

use periwave_core::elliptic::Modulus;
use periwave_core::evolution::*;
use periwave_core::families::*;
use periwave_core::functionals::rho;
use periwave_core::Error;

const TP: f64 = 2.0 * PI;

fn wave(f: FamilyId, k: f64, l: f64, n: usize) -> WaveProfile {
    construct(f, Modulus::new(k).unwrap(), l, n).unwrap()
}

fn config(form: &PdeForm, u0: &[f64], t_final: f64, integrator: Integrator) -> EvolutionConfig {
    EvolutionConfig {
        n: u0.len(),
        dt: suggest_dt(form, u0, integrator, true),
        t_final,
        integrator,
        dealias: true,
        record_every: 20,
    }
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn sup(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

#[test]
fn zero_data_stays_zero() {
    let form = PdeForm::of_family(FamilyId::KdvCnoidal, TP);
    let z = vec![0.0; 64];
    let cfg = EvolutionConfig { n: 64, dt: 1e-3, t_final: 0.1, integrator: Integrator::ExponentialRk4, dealias: true, record_every: 10 };
    let out = integrate(&z, &z, &form, &cfg).unwrap().into_result().unwrap();
    assert!(out.final_state.iter().all(|&x| x == 0.0));
    assert!(out.trace.sup_rho == 0.0);
}

#[test]
fn configuration_is_validated() {
    let form = PdeForm::of_family(FamilyId::KdvCnoidal, TP);
    let u = vec![0.0; 48];
    let mut cfg = EvolutionConfig { n: 48, dt: 1e-3, t_final: 1.0, integrator: Integrator::ExponentialRk4, dealias: true, record_every: 1 };
    assert!(matches!(integrate(&u, &u, &form, &cfg), Err(Error::Invalid(_))));
    cfg.n = 64;
    assert!(matches!(integrate(&u, &u, &form, &cfg), Err(Error::Shape(48, 64))));
    let u = vec![0.0; 64];
    cfg.dt = -1.0;
    assert!(integrate(&u, &u, &form, &cfg).is_err());
}

#[test]
fn traveling_wave_translates_rigidly() {
    let p = wave(FamilyId::MkdvDnoidal, 0.5, TP, 256);
    let form = PdeForm::of_family(p.family, p.period);
    let t = 2.0 * travel_period(&p);
    let cfg = config(&form, &p.samples, t, Integrator::ExponentialRk4);
    let out = integrate(&p.samples, &p.samples, &form, &cfg).unwrap().into_result().unwrap();
    let exact = translate(&p.samples, p.period, -p.c * out.final_time).unwrap();
    assert!(sup_diff(&out.final_state, &exact) < 1e-6 * p.scale());
    assert!(out.trace.sup_rho < 1e-6);
    let speed = out.trace.phase_speed().unwrap();
    assert!(((speed - p.c) / p.c).abs() < 1e-4, "{speed} vs {}", p.c);
}

#[test]
fn kdv_invariants_are_conserved_over_ten_periods() {
    let p = wave(FamilyId::KdvCnoidal, 0.9, TP, 256);
    let form = PdeForm::of_family(p.family, p.period);
    let cfg = config(&form, &p.samples, 10.0 * travel_period(&p), Integrator::ExponentialRk4);
    let out = orbital_experiment(&p, Perturbation::ModeBump { amplitude: 1e-3 * p.scale(), mode: 1 }, &cfg)
        .unwrap()
        .into_result()
        .unwrap();
    for d in out.trace.max_drifts() {
        assert!(d < 1e-6, "{:?}", out.trace.max_drifts());
    }
    assert!(out.trace.drift_e.iter().all(|&d| d >= 0.0));
    assert_eq!(out.trace.sup_rho, out.trace.rho_series.iter().copied().fold(0.0, f64::max));
}

#[test]
fn regularized_flow_conserves_its_charge() {
    let kl = find_k_l(FamilyId::MbbmDnsn, 30.0).unwrap();
    let p = wave(FamilyId::MbbmDnsn, 0.5 * kl, 30.0, 256);
    let form = PdeForm::of_family(p.family, p.period);
    let cfg = config(&form, &p.samples, 2.0 * travel_period(&p), Integrator::ExponentialRk4);
    let out = integrate(&p.samples, &p.samples, &form, &cfg).unwrap().into_result().unwrap();
    assert!(out.trace.max_drifts().iter().all(|&d| d < 1e-6));
    assert!(out.trace.sup_rho < 1e-6);
}

// error at T against the exact traveling solution
fn kdv_error(dt: f64) -> f64 {
    let p = wave(FamilyId::KdvCnoidal, 0.9, TP, 128);
    let form = PdeForm::of_family(p.family, p.period);
    let t = 0.2 * travel_period(&p);
    let steps = (t / dt).round();
    let cfg = EvolutionConfig { n: 128, dt: t / steps, t_final: t, integrator: Integrator::ExponentialRk4, dealias: false, record_every: 1000 };
    let out = integrate(&p.samples, &p.samples, &form, &cfg).unwrap().into_result().unwrap();
    sup_diff(&out.final_state, &translate(&p.samples, p.period, -p.c * t).unwrap())
}

#[test]
fn exponential_rk4_is_fourth_order() {
    let p = wave(FamilyId::KdvCnoidal, 0.9, TP, 128);
    let form = PdeForm::of_family(p.family, p.period);
    let base = 4.0 * suggest_dt(&form, &p.samples, Integrator::ExponentialRk4, false);
    let (e1, e2) = (kdv_error(base), kdv_error(base / 2.0));
    assert!(e2 > 1e-12, "errors at round-off: {e1:e} {e2:e}");
    assert!(e1 / e2 >= 8.0, "{e1:e} / {e2:e}");
}

#[test]
fn implicit_midpoint_tracks_the_wave() {
    let p = wave(FamilyId::KdvCnoidal, 0.9, TP, 128);
    let form = PdeForm::of_family(p.family, p.period);
    let cfg = config(&form, &p.samples, travel_period(&p), Integrator::ImplicitMidpoint);
    let out = integrate(&p.samples, &p.samples, &form, &cfg).unwrap().into_result().unwrap();
    assert!(out.trace.sup_rho < 1e-4 * p.scale());
    // symplectic: the quadratic charge is conserved to solver tolerance
    assert!(out.trace.max_drifts()[1] < 1e-10);
}

#[test]
fn gardner_flow_is_conjugate_to_mkdv() {
    let (a, b) = (1.0, 1.0);
    let p = wave(FamilyId::GardnerDn { a, b }, 0.6, TP, 256);
    let bump = Perturbation::ModeBump { amplitude: 1e-3 * p.scale(), mode: 2 }.samples(TP, 256);
    let v0: Vec<f64> = p.samples.iter().zip(&bump).map(|(x, y)| x + y).collect();
    let w0 = gardner_forward(&v0, a, b).unwrap();
    let w_ref = gardner_forward(&p.samples, a, b).unwrap();

    let gform = PdeForm::of_family(p.family, TP);
    let mform = PdeForm::of_family(FamilyId::MkdvDnoidal, TP);
    let t = travel_period(&p);
    let dt = suggest_dt(&gform, &v0, Integrator::ExponentialRk4, true).min(suggest_dt(&mform, &w0, Integrator::ExponentialRk4, true));
    let cfg = EvolutionConfig { n: 256, dt: t / (t / dt).ceil(), t_final: t, integrator: Integrator::ExponentialRk4, dealias: true, record_every: 25 };

    let gv = integrate(&v0, &p.samples, &gform, &cfg).unwrap().into_result().unwrap();
    let mw = integrate(&w0, &w_ref, &mform, &cfg).unwrap().into_result().unwrap();
    let tv = gardner_forward(&gv.final_state, a, b).unwrap();
    let w_shifted = translate(&mw.final_state, TP, gardner_frame_shift(a, b, gv.final_time)).unwrap();
    assert!(sup_diff(&tv, &w_shifted) < 1e-6 * sup(&w_shifted));

    let s = (b / 6.0).sqrt();
    for (rg, rm) in gv.trace.rho_series.iter().zip(&mw.trace.rho_series) {
        assert!((s * rg - rm).abs() < 1e-6 * rm, "{rg} {rm}");
    }
}

#[test]
fn rho_scales_under_the_gardner_map() {
    let (a, b) = (0.7, 2.0);
    let p = wave(FamilyId::GardnerDn { a, b }, 0.6, TP, 256);
    let q = Perturbation::Random { seed: 7, amplitude: 1e-2 * p.scale() }.samples(TP, 256);
    let u: Vec<f64> = p.samples.iter().zip(&q).map(|(x, y)| x + y).collect();
    let r = rho(&u, &p.samples, 1.0, TP).unwrap();
    let rt = rho(&gardner_forward(&u, a, b).unwrap(), &gardner_forward(&p.samples, a, b).unwrap(), 1.0, TP).unwrap();
    assert!((rt - (b / 6.0).sqrt() * r).abs() < 1e-9 * rt);
}

#[test]
fn large_perturbations_are_rejected() {
    let p = wave(FamilyId::MkdvDnoidal, 0.5, TP, 64);
    let form = PdeForm::of_family(p.family, p.period);
    let cfg = config(&form, &p.samples, 1.0, Integrator::ExponentialRk4);
    let big = Perturbation::ModeBump { amplitude: 0.2 * p.scale(), mode: 1 };
    assert!(matches!(orbital_experiment(&p, big, &cfg), Err(Error::Invalid(_))));
}

#[test]
fn zero_perturbation_is_stable() {
    let p = wave(FamilyId::MkdvDnoidal, 0.5, TP, 128);
    let form = PdeForm::of_family(p.family, p.period);
    let cfg = config(&form, &p.samples, travel_period(&p), Integrator::ExponentialRk4);
    let out = orbital_experiment(&p, Perturbation::ModeBump { amplitude: 0.0, mode: 3 }, &cfg).unwrap();
    assert!(out.trace.sup_rho < 1e-6);
    assert!(out.trace.orbitally_stable(10.0));
}

#[test]
fn random_perturbations_are_reproducible() {
    let a = Perturbation::Random { seed: 42, amplitude: 1e-3 }.samples(TP, 128);
    let b = Perturbation::Random { seed: 42, amplitude: 1e-3 }.samples(TP, 128);
    let c = Perturbation::Random { seed: 43, amplitude: 1e-3 }.samples(TP, 128);
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!((sup(&a) - 1e-3).abs() < 1e-18);
    assert!(a.iter().sum::<f64>().abs() < 1e-15);

    let p = wave(FamilyId::KdvCnoidal, 0.9, TP, 128);
    let form = PdeForm::of_family(p.family, p.period);
    let cfg = config(&form, &p.samples, 0.5, Integrator::ExponentialRk4);
    let pert = Perturbation::Random { seed: 42, amplitude: 1e-3 };
    let r1 = orbital_experiment(&p, pert, &cfg).unwrap();
    let r2 = orbital_experiment(&p, pert, &cfg).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn blow_up_guard_aborts_with_partial_trace() {
    // large data and a step far above the advective limit
    let form = PdeForm::of_family(FamilyId::MkdvDnoidal, TP);
    let u: Vec<f64> = periwave_core::fourier::grid(TP, 32).iter().map(|x| 50.0 * x.cos()).collect();
    let cfg = EvolutionConfig { n: 32, dt: 0.05, t_final: 10.0, integrator: Integrator::ExponentialRk4, dealias: false, record_every: 1 };
    let out = integrate(&u, &u, &form, &cfg).unwrap();
    let abort = out.abort.expect("guard trips");
    assert!(abort.t < 10.0);
    assert!(!out.trace.times.is_empty());
    assert!(matches!(out.into_result(), Err(Error::Abort { .. })));
}

#[test]
fn schamel_positivity_monitor() {
    let form = PdeForm::of_family(FamilyId::Schamel, TP);
    let u: Vec<f64> = periwave_core::fourier::grid(TP, 64).iter().map(|x| 0.5 * x.cos()).collect();
    let cfg = EvolutionConfig { n: 64, dt: 1e-3, t_final: 0.01, integrator: Integrator::ExponentialRk4, dealias: true, record_every: 1 };
    let out = integrate(&u, &u, &form, &cfg).unwrap();
    assert_eq!(out.abort.unwrap().reason, "solution lost positivity");
}

#[test]
fn helpers() {
    assert!((wrap_shift(-1.0, TP) - (TP - 1.0)).abs() < 1e-15);
    assert_eq!(gardner_frame_shift(2.0, 1.0, 3.0), 3.0);
    let form = PdeForm::of_family(FamilyId::KdvCnoidal, TP);
    let dt = linear_stability_dt(&form, 256);
    let xi = 127.0;
    assert!((dt * xi * xi * xi - 1.0).abs() < 1e-12);
}
