//! Fourier pseudospectral evolution of
//!
//! ```text
//! u_t − Mu_x + ∂ₓf(u) = 0             û_t = iξα û − iξ f̂(u)
//! u_t + Mu_t + ∂ₓ(u + f(u)) = 0       û_t = −iξ(û + f̂(u))/(1 + α)
//! ```
//!
//! and perturbation experiments that watch `ρ(u(t), φ_k)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{fabs, floor, round};
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::{FamilyId, WaveProfile};
use crate::fourier::{self, grid, mode, shift_coefficients, wavenumber, Fft};
use crate::functionals::{charge_plain, charge_reg, mean, rho_with_shift};
use crate::nonlinearity::Nonlinearity;
use crate::symbol::SymbolSpec;

/// Blow-up guard: sup-norm growth factor relative to the initial state.
pub const BLOWUP_FACTOR: f64 = 1e6;
/// Largest perturbation accepted by [`orbital_experiment`], relative to `sup|φ|`.
pub const MAX_RELATIVE_AMPLITUDE: f64 = 0.1;

const CONTOUR_POINTS: usize = 32;
const MIDPOINT_TOL: f64 = 1e-14;
const MIDPOINT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    /// ETDRK4 (Cox–Matthews) with contour-integral coefficients; the linear part is exact.
    ExponentialRk4,
    /// Implicit midpoint rule solved by fixed-point iteration; symplectic and A-stable.
    ImplicitMidpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub n: usize,
    pub dt: f64,
    pub t_final: f64,
    pub integrator: Integrator,
    /// zero `f̂(u)` above `N/3` (2/3 rule)
    pub dealias: bool,
    /// trace sampling stride in steps
    pub record_every: usize,
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 8 || !self.n.is_power_of_two() {
            return Err(Error::Invalid(alloc::format!("grid size {} must be a power of two", self.n)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Invalid(alloc::format!("time step {} must be positive", self.dt)));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(Error::Invalid(alloc::format!("horizon {} must be nonnegative", self.t_final)));
        }
        if self.record_every == 0 {
            return Err(Error::Invalid("record_every must be at least 1".into()));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        let s = round(self.t_final / self.dt);
        s as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Gkdv,
    Regularized,
}

/// A PDE in one of the two conservative forms on a period-`L` domain.
#[derive(Debug, Clone, Copy)]
pub struct PdeForm {
    pub kind: FormKind,
    pub symbol: SymbolSpec,
    pub f: Nonlinearity,
    pub period: f64,
}

impl PdeForm {
    pub fn gkdv(symbol: SymbolSpec, f: Nonlinearity, period: f64) -> Self {
        PdeForm { kind: FormKind::Gkdv, symbol, f, period }
    }

    pub fn regularized(symbol: SymbolSpec, f: Nonlinearity, period: f64) -> Self {
        PdeForm { kind: FormKind::Regularized, symbol, f, period }
    }

    /// The equation a family travels in.
    pub fn of_family(family: FamilyId, period: f64) -> Self {
        let (symbol, f) = (family.symbol(), family.nonlinearity());
        if family.regularized() {
            PdeForm::regularized(symbol, f, period)
        } else {
            PdeForm::gkdv(symbol, f, period)
        }
    }

    /// `(Λ_m, N_m)` with `û_t = Λ_m û + N_m f̂(u)`.
    fn mode_operators(&self, m: i64) -> (Complex64, Complex64) {
        let xi = wavenumber(m, self.period);
        let alpha = self.symbol.multiplier(m, self.period);
        let i = Complex64::new(0.0, 1.0);
        match self.kind {
            FormKind::Gkdv => (i * xi * alpha, -i * xi),
            FormKind::Regularized => (-i * xi / (1.0 + alpha), -i * xi / (1.0 + alpha)),
        }
    }

    /// `(E, Q, V)` with the charge that the form conserves.
    pub fn invariants(&self, u: &[f64]) -> Result<[f64; 3]> {
        let (e, _) = self.energy_parts(u)?;
        let q = match self.kind {
            FormKind::Gkdv => charge_plain(u, self.period),
            FormKind::Regularized => charge_reg(u, &self.symbol, self.period)?,
        };
        Ok([e, q, mean(u, self.period)])
    }

    // E = ½∫uMu − ∫F(u) and |½∫uMu| + |∫F(u)|, the scale used for its relative drift
    fn energy_parts(&self, u: &[f64]) -> Result<(f64, f64)> {
        let fft = Fft::new(u.len())?;
        let mu = self.symbol.apply(&fft, u, self.period);
        let kin = 0.5 * u.iter().zip(&mu).map(|(a, b)| a * b).sum::<f64>() * self.period / u.len() as f64;
        let pot: Vec<f64> = u.iter().map(|&x| self.f.primitive(x)).collect();
        let pot = fourier::integrate(&pot, self.period);
        Ok((kin - pot, fabs(kin) + fabs(pot)))
    }
}

/// Sampled diagnostics of one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    /// `ρ(u(t), φ)` in `H^{s₂/2}`
    pub rho_series: Vec<f64>,
    /// unwrapped minimizing shifts
    pub shifts: Vec<f64>,
    pub drift_e: Vec<f64>,
    pub drift_q: Vec<f64>,
    pub drift_v: Vec<f64>,
    pub sup_rho: f64,
}

impl EvolutionTrace {
    pub fn initial_rho(&self) -> f64 {
        self.rho_series.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_drifts(&self) -> [f64; 3] {
        let mx = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
        [mx(&self.drift_e), mx(&self.drift_q), mx(&self.drift_v)]
    }

    /// Stability policy: `sup ρ ≤ factor · ρ(0)`, with an absolute floor of `1e−6`
    /// for unperturbed runs.
    pub fn orbitally_stable(&self, factor: f64) -> bool {
        self.sup_rho <= factor * self.initial_rho() || self.sup_rho < 1e-6
    }

    /// Least-squares slope of the unwrapped shift, negated: `u(t) ≈ φ(· − ct)`
    /// is matched by `φ(· + r)` at `r = −ct`.
    pub fn phase_speed(&self) -> Option<f64> {
        let n = self.times.len();
        if n < 2 {
            return None;
        }
        let tm = self.times.iter().sum::<f64>() / n as f64;
        let rm = self.shifts.iter().sum::<f64>() / n as f64;
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for (t, r) in self.times.iter().zip(&self.shifts) {
            sxy += (t - tm) * (r - rm);
            sxx += (t - tm) * (t - tm);
        }
        if sxx == 0.0 {
            return None;
        }
        Some(-sxy / sxx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbortInfo {
    pub t: f64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionOutcome {
    pub trace: EvolutionTrace,
    pub final_state: Vec<f64>,
    pub final_time: f64,
    /// set when a guard stopped the run; the trace is partial
    pub abort: Option<AbortInfo>,
}

impl EvolutionOutcome {
    pub fn into_result(self) -> Result<Self> {
        match self.abort {
            Some(a) => Err(Error::Abort { t: a.t, reason: a.reason }),
            None => Ok(self),
        }
    }
}

struct Stepper<'a> {
    form: &'a PdeForm,
    fft: Fft,
    lin: Vec<Complex64>,
    nl: Vec<Complex64>,
    keep: Vec<bool>,
    etd: Option<EtdCoefficients>,
    dt: f64,
}

struct EtdCoefficients {
    e: Vec<Complex64>,
    e2: Vec<Complex64>,
    q: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
    f3: Vec<Complex64>,
}

impl EtdCoefficients {
    // Kassam–Trefethen: average the φ-functions over a unit circle around hΛ
    fn new(lin: &[Complex64], h: f64) -> Self {
        let n = lin.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut c = EtdCoefficients {
            e: vec![zero; n],
            e2: vec![zero; n],
            q: vec![zero; n],
            f1: vec![zero; n],
            f2: vec![zero; n],
            f3: vec![zero; n],
        };
        let roots: Vec<Complex64> = (0..CONTOUR_POINTS)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64))
            .collect();
        let inv = 1.0 / CONTOUR_POINTS as f64;
        for (j, &l) in lin.iter().enumerate() {
            let hl = l * h;
            c.e[j] = hl.exp();
            c.e2[j] = (hl * 0.5).exp();
            let (mut q, mut f1, mut f2, mut f3) = (zero, zero, zero, zero);
            for &r in &roots {
                let z = hl + r;
                let ez = z.exp();
                let z3 = z * z * z;
                q += ((z * 0.5).exp() - 1.0) / z;
                f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
                f2 += (2.0 + z + ez * (z - 2.0)) / z3;
                f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
            }
            c.q[j] = q * (h * inv);
            c.f1[j] = f1 * (h * inv);
            c.f2[j] = f2 * (h * inv);
            c.f3[j] = f3 * (h * inv);
        }
        c
    }
}

impl<'a> Stepper<'a> {
    fn new(form: &'a PdeForm, config: &EvolutionConfig) -> Result<Self> {
        let n = config.n;
        let fft = Fft::new(n)?;
        let mut lin = vec![Complex64::new(0.0, 0.0); n];
        let mut nl = lin.clone();
        let mut keep = vec![true; n];
        for j in 0..n {
            let m = mode(j, n);
            if j == n / 2 || (config.dealias && 3 * m.unsigned_abs() as usize > n) {
                keep[j] = false;
            }
            if j == n / 2 {
                continue;
            }
            let (l, g) = form.mode_operators(m);
            lin[j] = l;
            nl[j] = g;
        }
        let etd = match config.integrator {
            Integrator::ExponentialRk4 => Some(EtdCoefficients::new(&lin, config.dt)),
            Integrator::ImplicitMidpoint => None,
        };
        Ok(Stepper { form, fft, lin, nl, keep, etd, dt: config.dt })
    }

    // N(û) = N_m f̂(u), returning also (sup|u|, min u) on the grid
    fn nonlinear(&self, uh: &[Complex64]) -> (Vec<Complex64>, f64, f64) {
        let u = self.fft.synthesize(uh);
        let (mut sup, mut lo) = (0.0f64, f64::INFINITY);
        for &x in &u {
            sup = sup.max(fabs(x));
            lo = lo.min(x);
        }
        let fu: Vec<f64> = u.iter().map(|&x| self.form.f.f(x)).collect();
        let mut fh = self.fft.coefficients(&fu);
        for (j, z) in fh.iter_mut().enumerate() {
            *z = if self.keep[j] { *z * self.nl[j] } else { Complex64::new(0.0, 0.0) };
        }
        (fh, sup, lo)
    }

    // one step; returns (sup|u_n|, min u_n) observed at the start of the step
    fn step(&self, uh: &mut [Complex64]) -> Result<(f64, f64)> {
        let n = uh.len();
        match &self.etd {
            Some(c) => {
                let (nu, sup, lo) = self.nonlinear(uh);
                let a: Vec<Complex64> = (0..n).map(|j| c.e2[j] * uh[j] + c.q[j] * nu[j]).collect();
                let (na, _, _) = self.nonlinear(&a);
                let b: Vec<Complex64> = (0..n).map(|j| c.e2[j] * uh[j] + c.q[j] * na[j]).collect();
                let (nb, _, _) = self.nonlinear(&b);
                let cc: Vec<Complex64> =
                    (0..n).map(|j| c.e2[j] * a[j] + c.q[j] * (2.0 * nb[j] - nu[j])).collect();
                let (nc, _, _) = self.nonlinear(&cc);
                for j in 0..n {
                    uh[j] = c.e[j] * uh[j] + c.f1[j] * nu[j] + 2.0 * c.f2[j] * (na[j] + nb[j]) + c.f3[j] * nc[j];
                }
                uh[n / 2] = Complex64::new(0.0, 0.0);
                Ok((sup, lo))
            }
            None => {
                let h = self.dt;
                let denom: Vec<Complex64> = self.lin.iter().map(|&l| 1.0 - 0.5 * h * l).collect();
                let (nu, sup, lo) = self.nonlinear(uh);
                // predictor: linearly implicit Euler half step
                let mut w: Vec<Complex64> = (0..n).map(|j| (uh[j] + 0.5 * h * nu[j]) / denom[j]).collect();
                let scale = uh.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
                let mut converged = false;
                for _ in 0..MIDPOINT_MAX_ITER {
                    let (nw, _, _) = self.nonlinear(&w);
                    let mut delta = 0.0f64;
                    for j in 0..n {
                        let next = (uh[j] + 0.5 * h * nw[j]) / denom[j];
                        delta = delta.max((next - w[j]).norm());
                        w[j] = next;
                    }
                    if !delta.is_finite() {
                        break;
                    }
                    if delta <= MIDPOINT_TOL * scale {
                        converged = true;
                        break;
                    }
                }
                if !converged {
                    return Err(Error::Abort { t: f64::NAN, reason: "implicit midpoint iteration did not converge" });
                }
                for j in 0..n {
                    uh[j] = 2.0 * w[j] - uh[j];
                }
                uh[n / 2] = Complex64::new(0.0, 0.0);
                Ok((sup, lo))
            }
        }
    }
}

struct Recorder<'a> {
    form: &'a PdeForm,
    reference: &'a [f64],
    s: f64,
    inv0: [f64; 3],
    scales: [f64; 3],
    last_shift: Option<f64>,
    trace: EvolutionTrace,
}

impl<'a> Recorder<'a> {
    fn new(form: &'a PdeForm, reference: &'a [f64], u0: &[f64]) -> Result<Self> {
        let inv0 = form.invariants(u0)?;
        let (_, e_scale) = form.energy_parts(u0)?;
        let l1 = u0.iter().map(|x| fabs(*x)).sum::<f64>() * form.period / u0.len() as f64;
        let scales = [
            e_scale.max(f64::MIN_POSITIVE),
            fabs(inv0[1]).max(f64::MIN_POSITIVE),
            fabs(inv0[2]).max(l1).max(f64::MIN_POSITIVE),
        ];
        Ok(Recorder {
            form,
            reference,
            s: form.symbol.energy_order(),
            inv0,
            scales,
            last_shift: None,
            trace: EvolutionTrace::default(),
        })
    }

    fn record(&mut self, t: f64, u: &[f64]) -> Result<()> {
        let period = self.form.period;
        let rr = rho_with_shift(u, self.reference, self.s, period)?;
        let shift = match self.last_shift {
            None => rr.shift,
            Some(prev) => {
                let d = rr.shift - prev;
                prev + d - period * round(d / period)
            }
        };
        self.last_shift = Some(shift);
        let inv = self.form.invariants(u)?;
        let tr = &mut self.trace;
        tr.times.push(t);
        tr.rho_series.push(rr.distance);
        tr.shifts.push(shift);
        tr.drift_e.push(fabs(inv[0] - self.inv0[0]) / self.scales[0]);
        tr.drift_q.push(fabs(inv[1] - self.inv0[1]) / self.scales[1]);
        tr.drift_v.push(fabs(inv[2] - self.inv0[2]) / self.scales[2]);
        tr.sup_rho = tr.sup_rho.max(rr.distance);
        Ok(())
    }
}

/// Evolves `u0` under `form` up to `config.t_final`, tracing `ρ(u(t), reference)`
/// and the relative drift of `E`, `Q`, `V`.
///
/// Guards (blow-up past [`BLOWUP_FACTOR`], lost positivity for `|u|^p`
/// nonlinearities, a stalled implicit solve) stop the run with a partial trace
/// and `abort` set.
pub fn integrate(u0: &[f64], reference: &[f64], form: &PdeForm, config: &EvolutionConfig) -> Result<EvolutionOutcome> {
    config.validate()?;
    if u0.len() != config.n {
        return Err(Error::Shape(u0.len(), config.n));
    }
    if reference.len() != config.n {
        return Err(Error::Shape(reference.len(), config.n));
    }
    let stepper = Stepper::new(form, config)?;
    let mut uh = stepper.fft.coefficients(u0);
    uh[config.n / 2] = Complex64::new(0.0, 0.0);
    let mut rec = Recorder::new(form, reference, u0)?;
    rec.record(0.0, u0)?;
    let sup0 = u0.iter().map(|x| fabs(*x)).fold(0.0, f64::max);
    let limit = BLOWUP_FACTOR * sup0.max(f64::MIN_POSITIVE);
    let positivity = form.f.needs_positivity();
    let steps = config.steps();
    let mut abort = None;
    let mut t = 0.0;
    for s in 1..=steps {
        let (sup, lo) = match stepper.step(&mut uh) {
            Ok(v) => v,
            Err(Error::Abort { reason, .. }) => {
                abort = Some(AbortInfo { t, reason });
                break;
            }
            Err(e) => return Err(e),
        };
        if !sup.is_finite() || sup > limit {
            abort = Some(AbortInfo { t, reason: "sup norm exceeded the blow-up guard" });
            break;
        }
        if positivity && lo < 0.0 {
            abort = Some(AbortInfo { t, reason: "solution lost positivity" });
            break;
        }
        t = s as f64 * config.dt;
        if s % config.record_every == 0 || s == steps {
            let u = stepper.fft.synthesize(&uh);
            if u.iter().any(|x| !x.is_finite()) {
                abort = Some(AbortInfo { t, reason: "non-finite state" });
                break;
            }
            rec.record(t, &u)?;
        }
    }
    Ok(EvolutionOutcome {
        trace: rec.trace,
        final_state: stepper.fft.synthesize(&uh),
        final_time: t,
        abort,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    /// `amplitude · cos(2π·mode·x/L)`
    ModeBump { amplitude: f64, mode: u32 },
    /// zero-mean random trigonometric polynomial (modes 1..=8) scaled to sup norm `amplitude`
    Random { seed: u64, amplitude: f64 },
}

impl Perturbation {
    pub fn amplitude(&self) -> f64 {
        match *self {
            Perturbation::ModeBump { amplitude, .. } | Perturbation::Random { amplitude, .. } => amplitude,
        }
    }

    /// The perturbation sampled on the period-`L` grid of size `n`.
    pub fn samples(&self, period: f64, n: usize) -> Vec<f64> {
        let x = grid(period, n);
        match *self {
            Perturbation::ModeBump { amplitude, mode } => {
                x.iter().map(|&x| amplitude * libm::cos(2.0 * PI * mode as f64 * x / period)).collect()
            }
            Perturbation::Random { seed, amplitude } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                let terms: Vec<(f64, f64)> = (1..=8).map(|_| (2.0 * unit() - 1.0, 2.0 * PI * unit())).collect();
                let raw: Vec<f64> = x
                    .iter()
                    .map(|&x| {
                        terms
                            .iter()
                            .enumerate()
                            .map(|(m, (a, ph))| a * libm::cos(2.0 * PI * (m + 1) as f64 * x / period + ph))
                            .sum::<f64>()
                    })
                    .collect();
                let sup = raw.iter().map(|v| fabs(*v)).fold(0.0, f64::max);
                if sup == 0.0 || amplitude == 0.0 {
                    return vec![0.0; n];
                }
                raw.iter().map(|v| amplitude * v / sup).collect()
            }
        }
    }
}

/// Integrates `φ_k + perturbation` in the family's own equation, measuring `ρ`
/// against the orbit of `φ_k` in `H^{s₂/2}`.
pub fn orbital_experiment(
    profile: &WaveProfile,
    perturbation: Perturbation,
    config: &EvolutionConfig,
) -> Result<EvolutionOutcome> {
    if profile.n != config.n {
        return Err(Error::Shape(profile.n, config.n));
    }
    let amp = fabs(perturbation.amplitude());
    let bound = MAX_RELATIVE_AMPLITUDE * profile.scale();
    if !(amp <= bound) {
        return Err(Error::Invalid(alloc::format!(
            "perturbation amplitude {amp:.6e} exceeds 0.1·sup|φ| = {bound:.6e}"
        )));
    }
    let p = perturbation.samples(profile.period, profile.n);
    let u0: Vec<f64> = profile.samples.iter().zip(&p).map(|(a, b)| a + b).collect();
    let form = PdeForm::of_family(profile.family, profile.period);
    integrate(&u0, &profile.samples, &form, config)
}

/// Time step heuristic from the explicit part of the right-hand side.
///
/// The dispersion is exact (ETDRK4) or A-stable (implicit midpoint), so the
/// step is limited by the advective rate `max_m |N_m| (1 + sup|f'(u)|)` over the
/// retained modes (`|N_m| = ξ_m` or `ξ_m/(1 + α_m)`). With this rate the
/// midpoint fixed-point map contracts with factor at most 1/4, since
/// `|1 − hΛ_m/2| ≥ 1`. The implicit midpoint linear bound `|ξ_max α(ξ_max)| dt ≤ 1`
/// is available separately as [`linear_stability_dt`].
pub fn suggest_dt(form: &PdeForm, u0: &[f64], integrator: Integrator, dealias: bool) -> f64 {
    let n = u0.len();
    let m_max = if dealias { n as i64 / 3 } else { n as i64 / 2 - 1 };
    let fmax = u0.iter().map(|&x| fabs(form.f.df(x))).fold(0.0, f64::max);
    let rate = (1..=m_max)
        .map(|m| {
            let xi = wavenumber(m, form.period);
            match form.kind {
                FormKind::Gkdv => xi * fmax,
                FormKind::Regularized => xi * (1.0 + fmax) / (1.0 + form.symbol.multiplier(m, form.period)),
            }
        })
        .fold(0.0, f64::max);
    let safety = match (form.kind, integrator) {
        (FormKind::Gkdv, _) => 0.5,
        // non-stiff: the step is set by accuracy rather than stability
        (FormKind::Regularized, _) => 0.05,
    };
    if rate == 0.0 {
        1e-2
    } else {
        safety / rate
    }
}

/// `dt` with `|ξ_max α(ξ_max)| dt = 1`, the linear-stability scale of the dispersion.
pub fn linear_stability_dt(form: &PdeForm, n: usize) -> f64 {
    let m = n as i64 / 2 - 1;
    let xi = wavenumber(m, form.period);
    let alpha = form.symbol.multiplier(m, form.period);
    let rate = match form.kind {
        FormKind::Gkdv => fabs(xi * alpha),
        FormKind::Regularized => fabs(xi / (1.0 + alpha)),
    };
    1.0 / rate
}

/// Time for the wave to travel one spatial period, `L/|c|`.
pub fn travel_period(profile: &WaveProfile) -> f64 {
    profile.period / fabs(profile.c)
}

/// `u(· + r)` by a Fourier phase shift.
pub fn translate(u: &[f64], period: f64, r: f64) -> Result<Vec<f64>> {
    let fft = Fft::new(u.len())?;
    let c = fft.coefficients(u);
    Ok(fft.synthesize(&shift_coefficients(&c, period, r)))
}

/// The x-shift `a²t/4b` relating Gardner and mKdV flows under `T`:
/// `T v(·, t) = w(· + a²t/4b, t)` where `w` solves focusing mKdV.
pub fn gardner_frame_shift(a: f64, b: f64, t: f64) -> f64 {
    a * a * t / (4.0 * b)
}

/// Reduces a shift to `[0, L)`.
pub fn wrap_shift(r: f64, period: f64) -> f64 {
    r - period * floor(r / period)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvolutionConfig {
        EvolutionConfig { n: 64, dt: 1e-3, t_final: 1.0, integrator: Integrator::ExponentialRk4, dealias: true, record_every: 1 }
    }

    #[test]
    fn configuration_errors() {
        assert!(cfg().validate().is_ok());
        assert!(EvolutionConfig { n: 48, ..cfg() }.validate().is_err());
        assert!(EvolutionConfig { dt: 0.0, ..cfg() }.validate().is_err());
        assert!(EvolutionConfig { dt: f64::NAN, ..cfg() }.validate().is_err());
        assert!(EvolutionConfig { t_final: -1.0, ..cfg() }.validate().is_err());
        assert!(EvolutionConfig { record_every: 0, ..cfg() }.validate().is_err());
        assert_eq!(cfg().steps(), 1000);
    }

    #[test]
    fn shape_mismatch() {
        let form = PdeForm::of_family(FamilyId::KdvCnoidal, 6.0);
        let u = vec![0.0; 32];
        assert!(matches!(integrate(&u, &u, &form, &cfg()), Err(Error::Shape(32, 64))));
    }

    #[test]
    fn shifts_wrap_into_the_period() {
        assert_eq!(wrap_shift(-1.0, 4.0), 3.0);
        assert_eq!(wrap_shift(9.0, 4.0), 1.0);
        assert_eq!(Perturbation::ModeBump { amplitude: -2.0, mode: 1 }.amplitude(), -2.0);
    }
}
