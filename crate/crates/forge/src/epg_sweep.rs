//! Error per gate as a function of the slot length.
//!
//! The gate's pulse area is held fixed while `tau` shrinks, so amplitudes grow
//! as `1/tau`; no amplitude bound is applied.

use std::io::{self, Write};

use dcg_core::compile::{compile_circuit, CompileOptions, Mode};
use dcg_core::dynamics::{error_phase, ErrorModel, DEFAULT_SUBSTEPS};
use dcg_core::pulses::PulseShape;
use dcg_core::random;

use crate::gate_spec::GateSpec;

pub const CSV_COLUMNS: [&str; 4] = ["tau", "epg_exact", "epg_first_order", "residual"];

/// `start:stop:points`, log-spaced and inclusive at both ends.
pub fn parse_tau_sweep(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, points] = parts[..] else {
        return Err(format!(
            "tau sweep `{spec}` must look like start:stop:points"
        ));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number"))
    };
    let (start, stop) = (num(start)?, num(stop)?);
    let points: usize = points
        .trim()
        .parse()
        .map_err(|_| format!("`{points}` is not a point count"))?;
    if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) {
        return Err("tau bounds must be positive and finite".into());
    }
    match points {
        0 => Err("need at least one point".into()),
        1 => Ok(vec![start]),
        n => {
            let (l0, l1) = (start.ln(), stop.ln());
            Ok((0..n)
                .map(|k| (l0 + (l1 - l0) * k as f64 / (n - 1) as f64).exp())
                .collect())
        }
    }
}

/// Error model and register used by the sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpgSetup {
    pub n_system: usize,
    pub n_bath: usize,
    pub seed: u64,
    /// Spectral norm of every `B_alpha^(i)`.
    pub coupling_norm: f64,
    /// Spectral norm of `H_B`.
    pub bath_norm: f64,
    pub shape: PulseShape,
    pub substeps: usize,
}

impl EpgSetup {
    pub fn new(n_system: usize) -> Self {
        Self {
            n_system,
            n_bath: 2,
            seed: 0,
            coupling_norm: 0.3,
            bath_norm: 0.3,
            shape: PulseShape::Rectangular,
            substeps: DEFAULT_SUBSTEPS,
        }
    }

    pub fn error_model(&self) -> ErrorModel {
        let mut rng = random::rng(self.seed);
        ErrorModel::random_linear(
            &mut rng,
            self.n_system,
            self.n_bath,
            self.coupling_norm,
            self.bath_norm,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpgRow {
    pub tau: f64,
    pub epg_exact: f64,
    pub epg_first_order: f64,
    /// `|| phi_exact - phi_first_order ||`.
    pub residual: f64,
}

pub fn sweep(
    gate: &GateSpec,
    mode: Mode,
    taus: &[f64],
    setup: &EpgSetup,
) -> dcg_core::Result<Vec<EpgRow>> {
    let em = setup.error_model();
    taus.iter()
        .map(|&tau| {
            let opts = CompileOptions::new(setup.n_system, tau).with_shape(setup.shape);
            let seq = compile_circuit(&gate.circuit(), mode, &opts)?;
            let report = error_phase(&seq, &em, setup.substeps)?;
            Ok(EpgRow {
                tau,
                epg_exact: report.epg_exact,
                epg_first_order: report.epg_first,
                residual: report.residual(),
            })
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len()) as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn write_csv<W: Write>(
    out: W,
    gate: &GateSpec,
    mode: Mode,
    setup: &EpgSetup,
    rows: &[EpgRow],
) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    writeln!(out, "# dcg-forge epg: gate={gate} mode={}", mode.name())?;
    writeln!(
        out,
        "# n_system={} n_bath={} seed={} coupling_norm={} bath_norm={} shape={} substeps={}",
        setup.n_system,
        setup.n_bath,
        setup.seed,
        setup.coupling_norm,
        setup.bath_norm,
        setup.shape.name(),
        setup.substeps
    )?;
    writeln!(
        out,
        "# fixed pulse area, no amplitude bound; norms are spectral norms of mod-bath phases"
    )?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.tau.to_string(),
            format!("{:e}", r.epg_exact),
            format!("{:e}", r.epg_first_order),
            format!("{:e}", r.residual),
        ])?;
    }
    w.flush()
}
