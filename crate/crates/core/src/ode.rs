//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems.

use libm::{fabs, pow, sqrt};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 { rtol: 1e-10, atol: 1e-14, max_steps: 5_000_000 }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const D: usize>(y: &[f64; D], terms: &[(f64, &[f64; D])], h: f64) -> [f64; D] {
    let mut out = *y;
    for (a, k) in terms {
        for i in 0..D {
            out[i] += h * a * k[i];
        }
    }
    out
}

impl Dopri5 {
    pub fn with_tolerance(rtol: f64, atol: f64) -> Self {
        Dopri5 { rtol, atol, ..Default::default() }
    }

    /// Integrates `y' = f(t, y)` from `t0` to `t1` and returns `y(t1)`.
    pub fn integrate<const D: usize, F>(&self, mut f: F, t0: f64, y0: [f64; D], t1: f64) -> Result<[f64; D]>
    where
        F: FnMut(f64, &[f64; D]) -> [f64; D],
    {
        let span = t1 - t0;
        if span == 0.0 {
            return Ok(y0);
        }
        let dir = span.signum();
        let mut t = t0;
        let mut y = y0;
        let mut k1 = f(t, &y);
        let mut h = self.initial_step(&k1, &y, span);
        let mut steps = 0;
        let t_eps = 1e-14 * fabs(t1).max(fabs(t0)).max(1.0);
        while dir * (t1 - t) > t_eps {
            if steps >= self.max_steps {
                return Err(Error::Abort { t, reason: "step budget exhausted" });
            }
            steps += 1;
            if dir * (t + h - t1) > -t_eps {
                h = t1 - t;
            }
            let k2 = f(t + C2 * h, &axpy(&y, &[(A21, &k1)], h));
            let k3 = f(t + C3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
            let k4 = f(t + C4 * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
            let k5 = f(t + C5 * h, &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
            let k6 = f(
                t + h,
                &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
            );
            let ynew = axpy(&y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
            let k7 = f(t + h, &ynew);
            let mut err = 0.0;
            for i in 0..D {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = self.atol + self.rtol * fabs(y[i]).max(fabs(ynew[i]));
                err += (e / sc) * (e / sc);
            }
            let err = sqrt(err / D as f64);
            if !err.is_finite() {
                return Err(Error::Abort { t, reason: "non-finite state" });
            }
            if err <= 1.0 {
                t += h;
                y = ynew;
                k1 = k7;
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * pow(err, -0.2)).clamp(0.2, 5.0) };
            h *= fac;
            if err > 1.0 && fabs(h) < t_eps {
                return Err(Error::Abort { t, reason: "step size underflow" });
            }
        }
        // a final sliver below t_eps is taken as an Euler step
        if t != t1 {
            let d = f(t, &y);
            for i in 0..D {
                y[i] += (t1 - t) * d[i];
            }
        }
        Ok(y)
    }

    fn initial_step<const D: usize>(&self, f0: &[f64; D], y0: &[f64; D], span: f64) -> f64 {
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for i in 0..D {
            let sc = self.atol + self.rtol * fabs(y0[i]);
            d0 += (y0[i] / sc) * (y0[i] / sc);
            d1 += (f0[i] / sc) * (f0[i] / sc);
        }
        let (d0, d1) = (sqrt(d0 / D as f64), sqrt(d1 / D as f64));
        let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h.min(fabs(span)) * span.signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_span_returns_initial_state() {
        let y = Dopri5::default().integrate(|_, _| [f64::NAN], 1.0, [3.0], 1.0).unwrap();
        assert_eq!(y, [3.0]);
    }

    #[test]
    fn harmonic_oscillator_forward_and_backward() {
        let osc = |_: f64, y: &[f64; 2]| [y[1], -y[0]];
        let s = Dopri5::default();
        let y = s.integrate(osc, 0.0, [1.0, 0.0], 10.0).unwrap();
        assert!((y[0] - libm::cos(10.0)).abs() < 1e-8 && (y[1] + libm::sin(10.0)).abs() < 1e-8);
        let back = s.integrate(osc, 10.0, y, 0.0).unwrap();
        assert!((back[0] - 1.0).abs() < 1e-8 && back[1].abs() < 1e-8);
    }

    #[test]
    fn failures_abort() {
        let blow = Dopri5::default().integrate(|_, y: &[f64; 1]| [y[0] * y[0]], 0.0, [1.0], 2.0);
        assert!(matches!(blow, Err(Error::Abort { .. })));
        let budget = Dopri5 { max_steps: 3, ..Default::default() };
        let r = budget.integrate(|t, _| [libm::cos(50.0 * t)], 0.0, [0.0], 100.0);
        assert!(matches!(r, Err(Error::Abort { reason: "step budget exhausted", .. })));
    }
}
