//! Linearized operator about a wave, its low spectrum, the Lamé closed forms,
//! Neves' θ and the discrete PF(2) test.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use libm::{fabs, sqrt};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::elliptic::{complete_k, Modulus};
use crate::error::{Error, Result};
use crate::families::{construct, ilw_fourier_coefficient, ilw_positive_mean, wave_constants, FamilyId, WaveProfile};
use crate::fourier::{wavenumber, Fft, FourierSeries};
use crate::ode::Dopri5;
use crate::symbol::{SymbolKind, SymbolSpec};

/// Galerkin matrix of `L_k = M + c − f'(φ_k)` (or `cM + (c − 1) − f'(φ_k)`) on the
/// modes `|m| ≤ N_t`, written in the real basis `1, √2 cos mx', √2 sin mx'` with
/// `x' = 2πx/L`, so the matrix is real symmetric for any real potential.
#[derive(Debug, Clone)]
pub struct HillOperator {
    pub nt: usize,
    pub matrix: DMatrix<f64>,
    /// coordinates of `φ_k'` in the same basis
    pub kernel_probe: DVector<f64>,
}

impl HillOperator {
    pub fn size(&self) -> usize {
        2 * self.nt + 1
    }

    /// `‖L_k φ_k'‖ / ‖φ_k'‖` within the truncation.
    pub fn kernel_defect(&self) -> f64 {
        (&self.matrix * &self.kernel_probe).norm() / self.kernel_probe.norm()
    }
}

// Coefficients of basis vector p on the exponentials e_m, as (m, weight) pairs.
fn basis_vector(p: usize) -> [(i64, Complex64); 2] {
    let s = FRAC_1_SQRT_2;
    if p == 0 {
        return [(0, Complex64::new(1.0, 0.0)), (0, Complex64::new(0.0, 0.0))];
    }
    let m = p.div_ceil(2) as i64;
    if p % 2 == 1 {
        [(m, Complex64::new(s, 0.0)), (-m, Complex64::new(s, 0.0))]
    } else {
        [(m, Complex64::new(0.0, -s)), (-m, Complex64::new(0.0, s))]
    }
}

fn to_real_coords(coeff: impl Fn(i64) -> Complex64, size: usize) -> DVector<f64> {
    DVector::from_iterator(
        size,
        (0..size).map(|p| basis_vector(p).iter().map(|&(m, w)| w.conj() * coeff(m)).sum::<Complex64>().re),
    )
}

/// Assembles the truncated operator about `profile`.
pub fn assemble(profile: &WaveProfile, symbol: &SymbolSpec, nt: usize) -> Result<HillOperator> {
    let n = profile.n;
    if nt > n / 2 {
        return Err(Error::Resolution(alloc::format!("N_t = {nt} exceeds N/2 = {}", n / 2)));
    }
    let f = profile.family.nonlinearity();
    let pot: Vec<f64> = profile.samples.iter().map(|&u| f.df(u)).collect();
    let fft = Fft::new(n)?;
    let gh = fft.coefficients(&pot);
    let peak = gh.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tail = (3 * n / 8..n / 2).map(|j| gh[j].norm()).fold(0.0, f64::max);
    if tail > 1e-9 * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::Resolution(alloc::format!(
            "potential not resolved on N = {n}: tail/peak = {:.2e}",
            tail / peak
        )));
    }
    // modes at or beyond Nyquist are treated as zero, not wrapped
    let ghat = |j: i64| -> Complex64 {
        if j.unsigned_abs() as usize >= n / 2 {
            Complex64::new(0.0, 0.0)
        } else if j >= 0 {
            gh[j as usize]
        } else {
            gh[(n as i64 + j) as usize]
        }
    };
    let (c, reg) = (profile.c, profile.family.regularized());
    let diag = |m: i64| {
        let a = symbol.multiplier(m, profile.period);
        if reg {
            c * a + (c - 1.0)
        } else {
            a + c
        }
    };
    let h = |m: i64, l: i64| -> Complex64 {
        let d = if m == l { diag(m) } else { 0.0 };
        Complex64::new(d, 0.0) - ghat(m - l)
    };
    let size = 2 * nt + 1;
    let basis: Vec<[(i64, Complex64); 2]> = (0..size).map(basis_vector).collect();
    let mut matrix = DMatrix::<f64>::zeros(size, size);
    for p in 0..size {
        for q in p..size {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(m, wp) in &basis[p] {
                if wp.norm_sqr() == 0.0 {
                    continue;
                }
                for &(l, wq) in &basis[q] {
                    if wq.norm_sqr() == 0.0 {
                        continue;
                    }
                    acc += wp.conj() * h(m, l) * wq;
                }
            }
            matrix[(p, q)] = acc.re;
            matrix[(q, p)] = acc.re;
        }
    }
    let phi_hat = |m: i64| -> Complex64 {
        let j = if m >= 0 { m as usize } else { (n as i64 + m) as usize };
        Complex64::new(0.0, wavenumber(m, profile.period)) * profile.fourier[j]
    };
    let kernel_probe = to_real_coords(phi_hat, size);
    Ok(HillOperator { nt, matrix, kernel_probe })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// lowest eigenvalues, ascending
    pub eigenvalues: Vec<f64>,
    pub n_negative: usize,
    pub zero_candidates: Vec<f64>,
    pub kernel_alignment: f64,
    pub tol_zero: f64,
    pub h1_holds: bool,
    pub h2_holds: bool,
}

impl SpectrumReport {
    /// True when the second eigenvalue is the (only) numerically zero one.
    pub fn zero_is_second(&self) -> bool {
        self.eigenvalues.len() > 1 && fabs(self.eigenvalues[1]) <= self.tol_zero && self.zero_candidates.len() == 1
    }
}

/// Dense symmetric eigen-decomposition. `tol_zero` defaults to `1e−6 |λ₀|`.
pub fn eigs(op: &HillOperator, n_eigs: usize, tol_zero: Option<f64>) -> SpectrumReport {
    let eig = SymmetricEigen::new(op.matrix.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let tol = tol_zero.unwrap_or(1e-6 * fabs(sorted[0]));
    let n_negative = sorted.iter().filter(|&&l| l < -tol).count();
    let zero_candidates: Vec<f64> = sorted.iter().copied().filter(|l| fabs(*l) <= tol).collect();
    let closest = order
        .iter()
        .copied()
        .min_by(|&a, &b| fabs(eig.eigenvalues[a]).total_cmp(&fabs(eig.eigenvalues[b])))
        .expect("nonempty spectrum");
    let v = eig.eigenvectors.column(closest);
    let probe = &op.kernel_probe;
    let kernel_alignment = (fabs(v.dot(probe)) / (v.norm() * probe.norm())).min(1.0);
    SpectrumReport {
        eigenvalues: sorted.into_iter().take(n_eigs).collect(),
        n_negative,
        h1_holds: n_negative == 1,
        h2_holds: zero_candidates.len() == 1 && kernel_alignment > 0.999,
        zero_candidates,
        kernel_alignment,
        tol_zero: tol,
    }
}

/// Lowest three periodic Lamé eigenvalues `h` and their images `λ` in the spectrum of `L_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LameTriple {
    pub h: [f64; 3],
    pub lambda: [f64; 3],
}

fn sym2_eigs(m: [[f64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = sqrt(tr * tr / 4.0 - det);
    [tr / 2.0 - disc, tr / 2.0 + disc]
}

/// Closed-form low spectrum for the families whose linearization is a Lamé operator.
pub fn lame_closed_form(family: FamilyId, k: Modulus, period: f64) -> Result<LameTriple> {
    let (c, _) = wave_constants(family, k, period)?;
    let kv = k.k();
    let k2 = kv * kv;
    let kk = complete_k(k);
    match family {
        FamilyId::KdvCnoidal => {
            // −y'' + 12k² sn² y = h y, y 2K-periodic
            let b = 2.0 * kk / period;
            let d = sqrt(1.0 - k2 + 4.0 * k2 * k2);
            let h = [2.0 + 5.0 * k2 - 2.0 * d, 4.0 + 4.0 * k2, 2.0 + 5.0 * k2 + 2.0 * d];
            Ok(LameTriple { h, lambda: h.map(|h| b * b * h - 12.0 * k2 * b * b + c) })
        }
        FamilyId::MkdvDnoidal => {
            // −y'' + 6k² sn² y = h y
            let a = 2.0 * kk / period;
            let d = sqrt(1.0 - k2 + k2 * k2);
            let h = [2.0 * (1.0 + k2 - d), 4.0 + k2, 2.0 * (1.0 + k2 + d)];
            Ok(LameTriple { h, lambda: h.map(|h| a * a * h - 6.0 * a * a + c) })
        }
        FamilyId::RegSchamel => {
            // −y'' + 30k² sn² y = h y: 2K-periodic eigenfunctions are dn·P(sn²) and sn cn dn·P(sn²)
            let even = DMatrix::from_row_slice(
                3,
                3,
                &[k2, -2.0, 0.0, 28.0 * k2, 9.0 * k2 + 4.0, -12.0, 0.0, 18.0 * k2, 25.0 * k2 + 16.0],
            );
            let mut hs: Vec<f64> = even
                .complex_eigenvalues()
                .iter()
                .map(|z| z.re)
                .collect();
            hs.extend(sym2_eigs([[4.0 * k2 + 4.0, -6.0], [18.0 * k2, 16.0 * k2 + 16.0]]));
            hs.sort_by(f64::total_cmp);
            let mt = period * period - 64.0 * kk * kk * sqrt(k2 * k2 - k2 + 1.0);
            let x = (period * period - 64.0 * (2.0 * k2 - 1.0) * kk * kk) / mt;
            let b = 2.0 * kk / period;
            let shift = (c - 1.0) - 1.5 * (5.0 / 12.0 * (x - 1.0) + 80.0 * k2 * kk * kk / mt);
            let h = [hs[0], hs[1], hs[2]];
            Ok(LameTriple { h, lambda: h.map(|h| c * b * b * h + shift) })
        }
        _ => Err(Error::Unsupported("no Lamé closed form for this family")),
    }
}

/// Neves' `θ = y'(L)/φ''(0)`, where `−y'' + V y = 0`, `y(0) = −1/φ''(0)`, `y'(0) = 0`
/// and `V = c − f'(φ)` (or `((c − 1) − f'(φ))/c` for the regularized equations).
/// `θ < 0` exactly when zero is the second eigenvalue of `L_k`.
pub fn neves_theta(profile: &WaveProfile, regularized: bool) -> Result<f64> {
    if !matches!(profile.family.symbol().kind, SymbolKind::NegSecondDerivative) {
        return Err(Error::Unsupported("θ needs second-order differential dispersion"));
    }
    let series = FourierSeries::from_coefficients(&profile.fourier, profile.period, 1e-17);
    let (_, _, d2) = series.eval_with_derivatives(0.0);
    let d2_scale = (0..profile.n)
        .map(|j| fabs(series.eval_with_derivatives(profile.period * j as f64 / profile.n as f64).2))
        .fold(0.0, f64::max);
    if fabs(d2) <= 1e-10 * d2_scale {
        return Err(Error::DegeneratePhase(d2));
    }
    let f = profile.family.nonlinearity();
    let c = profile.c;
    let potential = |x: f64| {
        let u = series.eval(x);
        if regularized {
            ((c - 1.0) - f.df(u)) / c
        } else {
            c - f.df(u)
        }
    };
    let y0 = -1.0 / d2;
    let solver = Dopri5::with_tolerance(1e-10, 1e-14 * fabs(y0));
    let y = solver.integrate(|x, y: &[f64; 2]| [y[1], potential(x) * y[0]], 0.0, [y0, 0.0], profile.period)?;
    Ok(y[1] / d2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pf2Violation {
    /// condition (i): entry at mode `n` not positive
    NonPositive { n: i64, value: f64 },
    /// condition (ii): `α_{n1−m1}α_{n2−m2} − α_{n1−m2}α_{n2−m1}` negative
    Minor { n1: i64, n2: i64, m1: i64, m2: i64, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pf2Verdict {
    pub holds: bool,
    /// the window `M`: entries for modes `−M..=M` were examined
    pub window: usize,
    /// smallest minor relative to its leading product
    pub min_relative_minor: f64,
    pub violation: Option<Pf2Violation>,
}

/// Relative tolerance under which a 2×2 minor counts as nonnegative.
pub const PF2_TOL: f64 = 1e-12;

/// Discrete PF(2) test of a sequence `seq[j] = α_{j − M}`, `j = 0..2M`: positivity
/// and nonnegativity of every translate minor whose indices stay inside the window.
pub fn pf2_check(seq: &[f64]) -> Result<Pf2Verdict> {
    if seq.len().is_multiple_of(2) {
        return Err(Error::Invalid(alloc::format!("PF(2) window needs 2M + 1 entries, got {}", seq.len())));
    }
    let m = (seq.len() / 2) as i64;
    let at = |j: i64| seq[(j + m) as usize];
    for j in -m..=m {
        if !(at(j) > 0.0) {
            return Ok(Pf2Verdict {
                holds: false,
                window: m as usize,
                min_relative_minor: f64::NAN,
                violation: Some(Pf2Violation::NonPositive { n: j, value: at(j) }),
            });
        }
    }
    let inside = |j: i64| j.abs() <= m;
    let mut worst = f64::INFINITY;
    let mut violation = None;
    for n1 in -m..=m {
        for n2 in n1 + 1..=m {
            for m1 in -m..=m {
                if !inside(n1 - m1) || !inside(n2 - m1) {
                    continue;
                }
                for m2 in m1 + 1..=m {
                    if !inside(n2 - m2) || !inside(n1 - m2) {
                        continue;
                    }
                    let lead = at(n1 - m1) * at(n2 - m2);
                    let minor = lead - at(n1 - m2) * at(n2 - m1);
                    let rel = minor / lead;
                    if rel < worst {
                        worst = rel;
                    }
                    if rel < -PF2_TOL && violation.is_none() {
                        violation = Some(Pf2Violation::Minor { n1, n2, m1, m2, value: minor });
                    }
                }
            }
        }
    }
    Ok(Pf2Verdict { holds: violation.is_none(), window: m as usize, min_relative_minor: worst, violation })
}

/// Exact Fourier coefficients of the ILW wave on modes `−M..=M`, with the mean
/// replaced by that of its positive Galilean representative (a constant shift,
/// which leaves the linearized operator unchanged up to the speed).
pub fn ilw_pf2_window(k: Modulus, period: f64, delta: f64, window: usize) -> Result<Vec<f64>> {
    let m = window as i64;
    let mut out = vec![0.0; 2 * window + 1];
    for j in -m..=m {
        out[(j + m) as usize] =
            if j == 0 { ilw_positive_mean(k, period, delta)? } else { ilw_fourier_coefficient(k, period, delta, j)? };
    }
    Ok(out)
}

/// Convenience: profile + operator + report at once.
pub fn spectrum_of(family: FamilyId, k: Modulus, period: f64, n: usize, nt: usize) -> Result<(WaveProfile, SpectrumReport, f64)> {
    let profile = construct(family, k, period, n)?;
    let op = assemble(&profile, &family.symbol(), nt)?;
    let defect = op.kernel_defect();
    Ok((profile, eigs(&op, 8.min(op.size()), None), defect))
}
