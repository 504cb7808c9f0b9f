//! One function per subcommand. Each returns the process exit code; human-readable
//! summaries go to stderr so that tables on stdout stay machine-readable.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use periwave_core::elliptic::Modulus;
use periwave_core::evolution::{
    orbital_experiment, suggest_dt, travel_period, EvolutionConfig, Integrator, Perturbation, PdeForm,
};
use periwave_core::families::{construct, relative_residual, WaveProfile};
use periwave_core::spectral::{assemble, eigs, lame_closed_form};

use crate::config::{IntegratorTag, RunConfig};
use crate::io::{self as formats, SpectrumDocument};
use crate::reproduce::{reproduce as reproduce_table, verdict, TableId};
use crate::sweep::{first_inadmissible, theta_sweep, verify_sweep};
use crate::{exit, CliError};

/// Residual bound a constructed profile must meet.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Bound on `‖L φ'‖/‖φ'‖`.
pub const KERNEL_TOL: f64 = 1e-6;
/// Stability policy: `sup ρ ≤ STABILITY_FACTOR · ρ(0)`.
pub const STABILITY_FACTOR: f64 = 10.0;
pub const DEFAULT_TRAVEL_PERIODS: f64 = 10.0;
/// Target number of trace rows when `record_every` is not given.
const TRACE_ROWS: usize = 500;

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn wave(cfg: &RunConfig) -> Result<WaveProfile, CliError> {
    let family = cfg.family_id()?;
    Ok(construct(family, Modulus::new(cfg.single_k()?)?, cfg.single_period()?, cfg.grid_size())?)
}

fn with_extension(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Writes `<stem>.json` and `<stem>.csv`; the stem defaults to the family tag.
pub fn construct_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let p = wave(cfg)?;
    let stem = cfg.output.clone().unwrap_or_else(|| PathBuf::from(p.family.tag()));
    let (json, csv) = (with_extension(&stem, "json"), with_extension(&stem, "csv"));
    formats::write_profile_json(sink(Some(&json))?, &p)?;
    formats::write_wave_csv(sink(Some(&csv))?, &p)?;
    let r = relative_residual(&p);
    eprintln!("{} k={} L={}: c = {:.12e}, A = {:.12e}", p.family.tag(), p.k.k(), p.period, p.c, p.a);
    println!("residual {}", formats::real(r));
    eprintln!("wrote {} and {}", json.display(), csv.display());
    Ok(if r < RESIDUAL_TOL { exit::OK } else { exit::TOLERANCE })
}

pub fn spectrum_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let p = wave(cfg)?;
    let nt = cfg.truncation();
    let op = assemble(&p, &p.family.symbol(), nt)?;
    let report = eigs(&op, 8.min(op.size()), None);
    let defect = op.kernel_defect();
    let lame = lame_closed_form(p.family, p.k, p.period).ok().map(|t| t.lambda);
    let doc = SpectrumDocument::new(&p, nt, &report, defect, lame);
    let mut out = sink(cfg.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()?;
    eprintln!(
        "n_negative = {}, zero simple = {}, kernel defect = {:.3e}",
        report.n_negative, report.h2_holds, defect
    );
    Ok(if defect < KERNEL_TOL { exit::OK } else { exit::TOLERANCE })
}

pub fn theta_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let family = cfg.family_id()?;
    let (ks, ls) = (cfg.ks()?, cfg.all_periods()?);
    if let Some(e) = first_inadmissible(family, &ks, &ls) {
        return Err(e.into());
    }
    let rows = theta_sweep(family, &ks, &ls, cfg.grid_size());
    let mut out = sink(cfg.output.as_deref())?;
    formats::write_theta_csv(&mut out, &rows)?;
    out.flush()?;
    match rows.iter().find_map(|r| r.theta.as_ref().err()) {
        Some(e) => {
            eprintln!("{e}");
            Ok(crate::exit_code(e))
        }
        None => Ok(exit::OK),
    }
}

pub fn verify_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let family = cfg.family_id()?;
    let (ks, ls) = (cfg.ks()?, cfg.all_periods()?);
    if let Some(e) = first_inadmissible(family, &ks, &ls) {
        return Err(e.into());
    }
    let reports = verify_sweep(family, &ks, &ls, &cfg.verify_config());
    let mut out = sink(cfg.output.as_deref())?;
    formats::write_hypothesis_csv(&mut out, &reports)?;
    out.flush()?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.all_hold())
        .map(|r| format!("k={} L={}: flags {:?} {}", r.k, r.period, r.flags, r.errors.join("; ")))
        .collect();
    for f in &failed {
        eprintln!("{f}");
    }
    eprintln!("{} of {} points satisfy every hypothesis", reports.len() - failed.len(), reports.len());
    Ok(if failed.is_empty() { exit::OK } else { exit::TOLERANCE })
}

/// The evolution settings implied by `cfg` for the wave `p`.
pub fn evolution_config(cfg: &RunConfig, p: &WaveProfile, u0: &[f64]) -> EvolutionConfig {
    let integrator: Integrator = cfg.integrator.unwrap_or(IntegratorTag::ExponentialRk4).into();
    let dealias = cfg.dealias.unwrap_or(true);
    let form = PdeForm::of_family(p.family, p.period);
    let t_final = cfg
        .horizon
        .unwrap_or_else(|| cfg.travel_periods.unwrap_or(DEFAULT_TRAVEL_PERIODS) * travel_period(p));
    let dt = match cfg.dt {
        Some(dt) => dt,
        // an integer number of steps lands exactly on the horizon
        None if t_final > 0.0 => {
            let dt = suggest_dt(&form, u0, integrator, dealias);
            t_final / (t_final / dt).ceil()
        }
        None => 1.0,
    };
    let steps = (t_final / dt).round() as usize;
    EvolutionConfig {
        n: p.n,
        dt,
        t_final,
        integrator,
        dealias,
        record_every: cfg.record_every.unwrap_or((steps / TRACE_ROWS).max(1)),
    }
}

pub fn perturbation(cfg: &RunConfig) -> Perturbation {
    let amplitude = cfg.amplitude.unwrap_or(0.0);
    match cfg.seed {
        Some(seed) => Perturbation::Random { seed, amplitude },
        None => Perturbation::ModeBump { amplitude, mode: cfg.mode.unwrap_or(1) },
    }
}

pub fn evolve_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let p = wave(cfg)?;
    let pert = perturbation(cfg);
    let q = pert.samples(p.period, p.n);
    let u0: Vec<f64> = p.samples.iter().zip(&q).map(|(a, b)| a + b).collect();
    let ecfg = evolution_config(cfg, &p, &u0);
    let outcome = orbital_experiment(&p, pert, &ecfg)?;
    let mut out = sink(cfg.output.as_deref())?;
    formats::write_trace_csv(&mut out, &outcome.trace)?;
    out.flush()?;
    if let Some(path) = &cfg.snapshot {
        let mut snap = p.clone();
        snap.samples = outcome.final_state.clone();
        formats::write_profile_json(sink(Some(path))?, &snap)?;
    }
    let t = &outcome.trace;
    let drifts = t.max_drifts();
    eprintln!(
        "t = {:.6e}: rho(0) = {:.6e}, sup rho = {:.6e}, drifts E {:.3e} Q {:.3e} V {:.3e}",
        outcome.final_time,
        t.initial_rho(),
        t.sup_rho,
        drifts[0],
        drifts[1],
        drifts[2]
    );
    if let Some(a) = outcome.abort {
        eprintln!("aborted at t = {:.6e}: {}", a.t, a.reason);
        return Ok(exit::ABORT);
    }
    let stable = t.orbitally_stable(STABILITY_FACTOR);
    eprintln!("sup_rho {} orbit policy", if stable { "within" } else { "outside" });
    Ok(if stable { exit::OK } else { exit::TOLERANCE })
}

pub fn reproduce_cmd(cfg: &RunConfig) -> Result<u8, CliError> {
    let table: TableId = cfg
        .table
        .as_deref()
        .ok_or_else(|| CliError::config("missing table"))?
        .parse()
        .map_err(CliError::config)?;
    let rows = reproduce_table(table);
    let mut out = sink(cfg.output.as_deref())?;
    formats::write_reproduction_csv(&mut out, &rows)?;
    out.flush()?;
    for r in &rows {
        eprintln!(
            "{:<5} {:<8} k={:<4} L={:<8} reference {:>14.6e} computed {:>14.6e} rel {:.2e}{}",
            if r.pass { "pass" } else { "FAIL" },
            r.reference.quantity,
            r.reference.k,
            r.reference.period,
            r.reference.value,
            r.computed,
            r.rel_error,
            if r.reference.required { "" } else { " (stretch)" }
        );
    }
    Ok(if verdict(&rows) { exit::OK } else { exit::TOLERANCE })
}
