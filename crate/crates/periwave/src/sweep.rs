//! Parallel parameter sweeps. Results come back sorted by `(k, L)` whatever the
//! thread count.

use std::env;

use periwave_core::elliptic::Modulus;
use periwave_core::families::{construct, FamilyId};
use periwave_core::hypothesis::{verify, HypothesisReport, VerifyConfig};
use periwave_core::spectral::neves_theta;
use periwave_core::{Error, Result};
use rayon::prelude::*;

/// Thread cap from `PERIWAVE_THREADS`; unset, empty or zero means the rayon default.
pub fn thread_cap() -> Option<usize> {
    env::var("PERIWAVE_THREADS").ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

/// Runs `f` inside a pool sized by [`thread_cap`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        b = b.num_threads(n);
    }
    match b.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn points(ks: &[f64], periods: &[f64]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = ks.iter().flat_map(|&k| periods.iter().map(move |&l| (k, l))).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts
}

pub fn verify_sweep(family: FamilyId, ks: &[f64], periods: &[f64], config: &VerifyConfig) -> Vec<HypothesisReport> {
    let pts = points(ks, periods);
    with_pool(|| pts.par_iter().map(|&(k, l)| verify(family, k, l, config)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaRow {
    pub family: FamilyId,
    pub k: f64,
    pub period: f64,
    pub theta: Result<f64>,
}

pub fn theta_at(family: FamilyId, k: f64, period: f64, n: usize) -> Result<f64> {
    let p = construct(family, Modulus::new(k)?, period, n)?;
    neves_theta(&p, family.regularized())
}

pub fn theta_sweep(family: FamilyId, ks: &[f64], periods: &[f64], n: usize) -> Vec<ThetaRow> {
    let pts = points(ks, periods);
    with_pool(|| {
        pts.par_iter()
            .map(|&(k, period)| ThetaRow { family, k, period, theta: theta_at(family, k, period, n) })
            .collect()
    })
}

/// First construction failure over the grid, checked before an expensive sweep.
pub fn first_inadmissible(family: FamilyId, ks: &[f64], periods: &[f64]) -> Option<Error> {
    points(ks, periods).into_iter().find_map(|(k, l)| {
        Modulus::new(k)
            .and_then(|m| periwave_core::families::wave_constants(family, m, l))
            .err()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_sorted_and_complete() {
        let rows = theta_sweep(FamilyId::MkdvDnoidal, &[0.6, 0.3], &[8.0, 6.0], 64);
        let keys: Vec<(f64, f64)> = rows.iter().map(|r| (r.k, r.period)).collect();
        assert_eq!(keys, [(0.3, 6.0), (0.3, 8.0), (0.6, 6.0), (0.6, 8.0)]);
        assert!(rows.iter().all(|r| *r.theta.as_ref().unwrap() < 0.0));
    }

    #[test]
    fn inadmissible_points_are_reported() {
        assert!(first_inadmissible(FamilyId::KdvCnoidal, &[0.9, 0.5], &[6.0]).is_some());
        assert!(first_inadmissible(FamilyId::KdvCnoidal, &[0.9], &[6.0]).is_none());
    }
}
