//! Run configuration documents.
//!
//! A run is described by one flat JSON object whose shape is published in
//! `schema/run_config.schema.json`. Unknown keys are rejected. Values given on
//! the command line are overlaid on the file.

use std::fs;
use std::path::{Path, PathBuf};

use periwave_core::evolution::Integrator;
use periwave_core::families::FamilyId;
use periwave_core::hypothesis::VerifyConfig;
use serde::{Deserialize, Serialize};

use crate::family::FamilySpec;
use crate::CliError;

pub const SCHEMA: &str = include_str!("../schema/run_config.schema.json");

pub const DEFAULT_N: usize = 256;
pub const DEFAULT_NT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorTag {
    ExponentialRk4,
    ImplicitMidpoint,
}

impl From<IntegratorTag> for Integrator {
    fn from(t: IntegratorTag) -> Self {
        match t {
            IntegratorTag::ExponentialRk4 => Integrator::ExponentialRk4,
            IntegratorTag::ImplicitMidpoint => Integrator::ImplicitMidpoint,
        }
    }
}

/// `count` equally spaced moduli from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl KGrid {
    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_grid: Option<KGrid>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    #[serde(rename = "L_values", skip_serializing_if = "Option::is_none")]
    pub periods: Option<Vec<f64>>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "N_t", skip_serializing_if = "Option::is_none")]
    pub nt: Option<usize>,
    /// base step of the k-derivatives
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    /// horizon in units of `L/|c|`, used when `T` is absent
    #[serde(skip_serializing_if = "Option::is_none")]
    pub travel_periods: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrator: Option<IntegratorTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dealias: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// where `evolve` writes its final state as a profile document
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot: Option<PathBuf>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::config(msg.into())
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| bad(format!("run configuration: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `self` with every field set in `flags` replaced. A flag for `k` or `L` also
    /// clears the file's grid alternative, and the other way round.
    pub fn overlay(mut self, flags: RunConfig) -> RunConfig {
        if flags.k.is_some() || flags.k_grid.is_some() {
            self.k = None;
            self.k_grid = None;
        }
        if flags.period.is_some() || flags.periods.is_some() {
            self.period = None;
            self.periods = None;
        }
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: flags.$f.or(self.$f)),* } };
        }
        pick!(
            family, a, b, delta, k, k_grid, period, periods, n, nt, h, dt, horizon, travel_periods, amplitude, mode,
            seed, integrator, dealias, record_every, table, output, snapshot
        )
    }

    /// Range checks the schema expresses: positivity, moduli in `[0, 1)`, power-of-two grids.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: Option<f64>| match v {
            Some(x) if !(x > 0.0 && x.is_finite()) => Err(bad(format!("{name} = {x} must be positive"))),
            _ => Ok(()),
        };
        positive("L", self.period)?;
        positive("dt", self.dt)?;
        positive("h", self.h)?;
        positive("travel_periods", self.travel_periods)?;
        positive("delta", self.delta)?;
        if let Some(t) = self.horizon {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(bad(format!("T = {t} must be nonnegative")));
            }
        }
        for l in self.periods.iter().flatten() {
            positive("L_values entry", Some(*l))?;
        }
        let modulus = |v: f64| (0.0..1.0).contains(&v);
        if let Some(k) = self.k {
            if !modulus(k) {
                return Err(bad(format!("k = {k} outside [0, 1)")));
            }
        }
        if let Some(g) = self.k_grid {
            if g.count > 0 && !(modulus(g.start) && modulus(g.stop)) {
                return Err(bad(format!("k_grid [{}, {}] outside [0, 1)", g.start, g.stop)));
            }
        }
        if let Some(n) = self.n {
            if n < 8 || !n.is_power_of_two() {
                return Err(bad(format!("N = {n} must be a power of two, at least 8")));
            }
        }
        if let (Some(nt), n) = (self.nt, self.n.unwrap_or(DEFAULT_N)) {
            if nt == 0 || nt > n / 2 {
                return Err(bad(format!("N_t = {nt} must lie in 1..=N/2 = {}", n / 2)));
            }
        }
        if let Some(a) = self.amplitude {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(bad(format!("amplitude = {a} must be nonnegative")));
            }
        }
        if self.record_every == Some(0) {
            return Err(bad("record_every must be at least 1"));
        }
        if self.mode == Some(0) {
            return Err(bad("mode must be at least 1"));
        }
        if self.k.is_some() && self.k_grid.is_some() {
            return Err(bad("give either k or k_grid, not both"));
        }
        if self.period.is_some() && self.periods.is_some() {
            return Err(bad("give either L or L_values, not both"));
        }
        Ok(())
    }

    pub fn family_spec(&self) -> Result<FamilySpec, CliError> {
        let tag = self.family.as_deref().ok_or_else(|| bad("missing family"))?;
        FamilySpec::from_parts(tag, self.a, self.b, self.delta).map_err(bad)
    }

    pub fn family_id(&self) -> Result<FamilyId, CliError> {
        self.family_spec().map(FamilyId::from)
    }

    pub fn single_k(&self) -> Result<f64, CliError> {
        self.k.ok_or_else(|| bad("missing k"))
    }

    /// `k`, or the points of `k_grid`.
    pub fn ks(&self) -> Result<Vec<f64>, CliError> {
        match (self.k, self.k_grid) {
            (Some(k), _) => Ok(vec![k]),
            (None, Some(g)) => Ok(g.points()),
            (None, None) => Err(bad("missing k or k_grid")),
        }
    }

    pub fn single_period(&self) -> Result<f64, CliError> {
        self.period.ok_or_else(|| bad("missing L"))
    }

    pub fn all_periods(&self) -> Result<Vec<f64>, CliError> {
        match (self.period, &self.periods) {
            (Some(l), _) => Ok(vec![l]),
            (None, Some(ls)) => Ok(ls.clone()),
            (None, None) => Err(bad("missing L or L_values")),
        }
    }

    pub fn grid_size(&self) -> usize {
        self.n.unwrap_or(DEFAULT_N)
    }

    pub fn truncation(&self) -> usize {
        self.nt.unwrap_or(DEFAULT_NT.min(self.grid_size() / 2))
    }

    pub fn verify_config(&self) -> VerifyConfig {
        let d = VerifyConfig::default();
        VerifyConfig { n: self.grid_size(), nt: self.truncation(), h: self.h.unwrap_or(d.h), ..d }
    }
}
