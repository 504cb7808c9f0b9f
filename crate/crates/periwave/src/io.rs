//! CSV and JSON writers. Every CSV starts with a header row and prints reals
//! with 17 significant digits.

use std::io::{Read, Write};

use periwave_core::elliptic::Modulus;
use periwave_core::evolution::EvolutionTrace;
use periwave_core::families::{construct, WaveProfile};
use periwave_core::fourier::grid;
use periwave_core::hypothesis::HypothesisReport;
use periwave_core::spectral::SpectrumReport;
use serde::{Deserialize, Serialize};

use crate::family::FamilySpec;
use crate::reproduce::ReproducedRow;
use crate::sweep::ThetaRow;
use crate::CliError;

/// `x` in scientific notation with 17 significant digits; non-finite values as `NaN`, `inf`, `-inf`.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// The on-disk form of a sampled wave.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub family: FamilySpec,
    pub k: f64,
    #[serde(rename = "L")]
    pub period: f64,
    pub c: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: Vec<f64>,
}

impl From<&WaveProfile> for ProfileDocument {
    fn from(p: &WaveProfile) -> Self {
        ProfileDocument {
            family: p.family.into(),
            k: p.k.k(),
            period: p.period,
            c: p.c,
            a: p.a,
            n: p.n,
            samples: p.samples.clone(),
        }
    }
}

impl ProfileDocument {
    /// Rebuilds the wave from its parameters and replaces the samples by the stored ones
    /// (a snapshot may be a perturbed or evolved state).
    pub fn to_profile(&self) -> Result<WaveProfile, CliError> {
        if self.samples.len() != self.n {
            return Err(CliError::config(format!("profile has {} samples, N = {}", self.samples.len(), self.n)));
        }
        let mut p = construct(self.family.into(), Modulus::new(self.k)?, self.period, self.n)?;
        p.samples = self.samples.clone();
        Ok(p)
    }
}

pub fn write_profile_json<W: Write>(w: W, p: &WaveProfile) -> Result<(), CliError> {
    serde_json::to_writer_pretty(w, &ProfileDocument::from(p))?;
    Ok(())
}

pub fn read_profile_json<R: Read>(r: R) -> Result<ProfileDocument, CliError> {
    serde_json::from_reader(r).map_err(|e| CliError::config(format!("profile document: {e}")))
}

/// Two columns, `x` and `phi`.
pub fn write_profile_csv<W: Write>(w: W, x: &[f64], samples: &[f64]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "phi"])?;
    for (x, u) in x.iter().zip(samples) {
        out.write_record([real(*x), real(*u)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_wave_csv<W: Write>(w: W, p: &WaveProfile) -> Result<(), CliError> {
    write_profile_csv(w, &grid(p.period, p.n), &p.samples)
}

pub fn write_theta_csv<W: Write>(w: W, rows: &[ThetaRow]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["family", "k", "L", "theta"])?;
    for r in rows {
        let theta = r.theta.as_ref().map_or_else(|_| "NaN".to_string(), |t| real(*t));
        out.write_record([r.family.tag().to_string(), real(r.k), real(r.period), theta])?;
    }
    out.flush()?;
    Ok(())
}

pub const HYPOTHESIS_HEADER: [&str; 20] = [
    "family", "k", "L", "c", "A", "dc_dk", "dA_dk", "Q", "V", "Phi", "Mk", "Psi", "theta", "n_neg", "zero_simple", "H0",
    "H1", "H2", "H3", "H4",
];

pub fn write_hypothesis_csv<W: Write>(w: W, reports: &[HypothesisReport]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(HYPOTHESIS_HEADER)?;
    for r in reports {
        let mut rec = vec![
            r.family.tag().to_string(),
            real(r.k),
            real(r.period),
            real(r.c),
            real(r.a),
            real(r.dc_dk),
            real(r.da_dk),
            real(r.q),
            real(r.v),
            real(r.phi),
            real(r.mk),
            real(r.psi),
            r.theta.map(real).unwrap_or_default(),
            r.n_negative.to_string(),
            flag(r.zero_simple).to_string(),
        ];
        rec.extend(r.flags.iter().map(|&f| flag(f).to_string()));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_trace_csv<W: Write>(w: W, trace: &EvolutionTrace) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "rho", "drift_E", "drift_Q", "drift_V"])?;
    for i in 0..trace.times.len() {
        out.write_record([
            real(trace.times[i]),
            real(trace.rho_series[i]),
            real(trace.drift_e[i]),
            real(trace.drift_q[i]),
            real(trace.drift_v[i]),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_reproduction_csv<W: Write>(w: W, rows: &[ReproducedRow]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["table", "quantity", "k", "L", "reference", "computed", "rel_error", "tolerance", "required", "pass", "note"])?;
    for r in rows {
        out.write_record([
            r.table.tag().to_string(),
            r.reference.quantity.to_string(),
            real(r.reference.k),
            real(r.reference.period),
            real(r.reference.value),
            real(r.computed),
            real(r.rel_error),
            real(r.reference.tolerance),
            flag(r.reference.required).to_string(),
            flag(r.pass).to_string(),
            r.note.clone(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// JSON form of a spectrum computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub family: FamilySpec,
    pub k: f64,
    #[serde(rename = "L")]
    pub period: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_t")]
    pub nt: usize,
    pub eigenvalues: Vec<f64>,
    pub n_negative: usize,
    pub zero_candidates: Vec<f64>,
    pub kernel_alignment: f64,
    pub tol_zero: f64,
    pub h1_holds: bool,
    pub h2_holds: bool,
    /// `‖L φ'‖/‖φ'‖`
    pub kernel_defect: f64,
    /// closed-form `λ₀, λ₁, λ₂` where available
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lame: Option<[f64; 3]>,
}

impl SpectrumDocument {
    pub fn new(p: &WaveProfile, nt: usize, report: &SpectrumReport, defect: f64, lame: Option<[f64; 3]>) -> Self {
        SpectrumDocument {
            family: p.family.into(),
            k: p.k.k(),
            period: p.period,
            n: p.n,
            nt,
            eigenvalues: report.eigenvalues.clone(),
            n_negative: report.n_negative,
            zero_candidates: report.zero_candidates.clone(),
            kernel_alignment: report.kernel_alignment,
            tol_zero: report.tol_zero,
            h1_holds: report.h1_holds,
            h2_holds: report.h2_holds,
            kernel_defect: defect,
            lame,
        }
    }
}
