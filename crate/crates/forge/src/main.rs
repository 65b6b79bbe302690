use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dcg_core::compile::{compile_circuit, CompileOptions, Mode};
use dcg_core::pulses::{validate, ControlLimits, PulseShape};
use dcg_forge::config::SweepConfig;
use dcg_forge::epg_sweep::{self, EpgSetup};
use dcg_forge::gate_spec::GateSpec;
use dcg_forge::{exit, seq_format, sweep, verify};

#[derive(Parser)]
#[command(
    name = "dcg-forge",
    version,
    about = "Dynamically corrected gate compiler and benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the cat-state benchmark sweep and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compile a gate into a pulse sequence.
    Compile {
        #[arg(long)]
        gate: GateSpec,
        #[arg(long, value_parser = parse_mode, default_value = "dcg")]
        mode: Mode,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Register size; defaults to the smallest one holding the gate.
        #[arg(long)]
        n_system: Option<usize>,
        #[arg(long, value_parser = parse_shape, default_value = "rect")]
        shape: PulseShape,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Amplitude bound checked together with `duration >= tau`.
        #[arg(long, default_value_t = 2.0)]
        h_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Error per gate against the slot length.
    Epg {
        #[arg(long)]
        gate: GateSpec,
        #[arg(long, value_parser = parse_mode, default_value = "dcg")]
        mode: Mode,
        /// `start:stop:points`, log-spaced.
        #[arg(long)]
        tau_sweep: String,
        #[arg(long)]
        n_system: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_bath: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        coupling_norm: f64,
        #[arg(long, default_value_t = 0.3)]
        bath_norm: f64,
        #[arg(long, value_parser = parse_shape, default_value = "rect")]
        shape: PulseShape,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_name(s).ok_or_else(|| format!("unknown mode `{s}` (primitive or dcg)"))
}

fn parse_shape(s: &str) -> Result<PulseShape, String> {
    PulseShape::from_name(s).ok_or_else(|| format!("unknown shape `{s}` (rect, tri or ramp)"))
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("dcg-forge: {msg}");
    ExitCode::from(code as u8)
}

fn register(gate: &GateSpec, n_system: Option<usize>) -> Result<usize, ExitCode> {
    let n = n_system.unwrap_or_else(|| gate.min_qubits());
    if n < gate.min_qubits() {
        return Err(fail(
            exit::CONFIG,
            format!("gate {gate} needs at least {} qubits", gate.min_qubits()),
        ));
    }
    Ok(n)
}

fn run_sweep(config: &Path, out: Option<&Path>) -> ExitCode {
    let text = match std::fs::read_to_string(config) {
        Ok(t) => t,
        Err(e) => return fail(exit::CONFIG, format!("{}: {e}", config.display())),
    };
    let cfg = match SweepConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail(exit::CONFIG, format!("{}: {e}", config.display())),
    };
    let outcome = sweep::run(&cfg);
    // Whatever succeeded is written even when some points failed.
    let written = output(out).and_then(|w| sweep::write_csv(w, &cfg, &outcome.records));
    if let Err(e) = written {
        return fail(exit::FAILURE, format!("writing CSV: {e}"));
    }
    if outcome.failures.is_empty() {
        return ExitCode::SUCCESS;
    }
    for f in &outcome.failures {
        eprintln!(
            "dcg-forge: point epsilon={} mode={} A={} failed: {}",
            f.epsilon,
            f.mode.name(),
            f.a,
            f.error
        );
    }
    fail(
        exit::FAILURE,
        format!(
            "{} of {} points failed",
            outcome.failures.len(),
            cfg.bench.points().len()
        ),
    )
}

fn run_verify(seed: u64) -> ExitCode {
    let checks = match verify::run_all(seed) {
        Ok(c) => c,
        Err(e) => return fail(exit::FAILURE, e),
    };
    for c in &checks {
        println!("{c}");
    }
    if checks.iter().all(|c| c.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(exit::FAILURE as u8)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_compile(
    gate: &GateSpec,
    mode: Mode,
    tau: f64,
    n_system: Option<usize>,
    shape: PulseShape,
    epsilon: f64,
    h_max: f64,
    out: Option<&Path>,
) -> ExitCode {
    let n = match register(gate, n_system) {
        Ok(n) => n,
        Err(code) => return code,
    };
    let opts = CompileOptions::new(n, tau)
        .with_shape(shape)
        .with_epsilon(epsilon);
    let seq = match compile_circuit(&gate.circuit(), mode, &opts) {
        Ok(s) => s,
        Err(e) => return fail(exit::CONFIG, e),
    };
    if let Err(e) =
        output(out).and_then(|mut w| w.write_all(seq_format::write_sequence(&seq).as_bytes()))
    {
        return fail(exit::FAILURE, format!("writing sequence: {e}"));
    }
    let report = validate(&seq, ControlLimits::new(tau, h_max));
    if report.is_ok() {
        return ExitCode::SUCCESS;
    }
    for v in &report.violations {
        eprintln!("dcg-forge: {v}");
    }
    fail(
        exit::FAILURE,
        format!(
            "{} segments violate the control limits",
            report.violations.len()
        ),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep { config, out } => run_sweep(&config, out.as_deref()),
        Command::Verify { seed } => run_verify(seed),
        Command::Compile {
            gate,
            mode,
            tau,
            n_system,
            shape,
            epsilon,
            h_max,
            out,
        } => run_compile(
            &gate,
            mode,
            tau,
            n_system,
            shape,
            epsilon,
            h_max,
            out.as_deref(),
        ),
        Command::Epg {
            gate,
            mode,
            tau_sweep,
            n_system,
            n_bath,
            seed,
            coupling_norm,
            bath_norm,
            shape,
            out,
        } => {
            let taus = match epg_sweep::parse_tau_sweep(&tau_sweep) {
                Ok(t) => t,
                Err(e) => return fail(exit::CONFIG, e),
            };
            let n = match register(&gate, n_system) {
                Ok(n) => n,
                Err(code) => return code,
            };
            let setup = EpgSetup {
                n_bath,
                seed,
                coupling_norm,
                bath_norm,
                shape,
                ..EpgSetup::new(n)
            };
            let rows = match epg_sweep::sweep(&gate, mode, &taus, &setup) {
                Ok(r) => r,
                Err(e) => return fail(exit::FAILURE, e),
            };
            match output(out.as_deref())
                .and_then(|w| epg_sweep::write_csv(w, &gate, mode, &setup, &rows))
            {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(exit::FAILURE, format!("writing CSV: {e}")),
            }
        }
    }
}
