//! Parallel benchmark sweep and its CSV output.

use std::io::{self, Write};
use std::time::Instant;

use dcg_core::bench::{run_point, sort_records, BenchmarkRecord};
use dcg_core::compile::Mode;
use rayon::prelude::*;

use crate::config::SweepConfig;

pub const CSV_COLUMNS: [&str; 6] = [
    "epsilon",
    "mode",
    "A",
    "fidelity_loss",
    "slot_count",
    "wall_time_s",
];

/// A sweep point that could not be evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct PointFailure {
    pub epsilon: f64,
    pub mode: Mode,
    pub a: f64,
    pub error: dcg_core::Error,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    /// Successful points in output order.
    pub records: Vec<BenchmarkRecord>,
    pub failures: Vec<PointFailure>,
}

/// Evaluates every point of the sweep. Points are independent, so a failure
/// leaves the others intact.
pub fn run(cfg: &SweepConfig) -> SweepOutcome {
    let points = cfg.bench.points();
    let eval = || -> Vec<Result<BenchmarkRecord, PointFailure>> {
        points
            .par_iter()
            .map(|&(epsilon, mode, a)| {
                let start = Instant::now();
                let mut rec =
                    run_point(&cfg.bench, a, epsilon, mode).map_err(|error| PointFailure {
                        epsilon,
                        mode,
                        a,
                        error,
                    })?;
                rec.wall_time_s = if cfg.timing {
                    start.elapsed().as_secs_f64()
                } else {
                    0.0
                };
                Ok(rec)
            })
            .collect()
    };
    let results = match cfg.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(eval),
            Err(_) => eval(),
        },
        None => eval(),
    };
    let mut outcome = SweepOutcome::default();
    for r in results {
        match r {
            Ok(rec) => outcome.records.push(rec),
            Err(f) => outcome.failures.push(f),
        }
    }
    sort_records(&mut outcome.records);
    outcome
}

/// `#`-prefixed provenance lines written above the CSV column header.
pub fn csv_header(cfg: &SweepConfig) -> Vec<String> {
    let b = &cfg.bench;
    vec![
        "dcg-forge sweep: cat-state fidelity loss, primitive vs corrected gates".to_string(),
        format!("config_sha256={}", cfg.hash()),
        format!("seed={}", b.seed),
        format!(
            "n_system={} n_bath={} gamma={} tau={} shape={} bath_state={} substeps={}",
            b.n_system,
            b.n_bath,
            b.gamma,
            b.tau,
            b.shape.name(),
            cfg.bath_state_name(),
            b.substeps
        ),
        "normalization: spins enter as Pauli operators (sigma, not sigma/2); time unit tau; \
         pulse area phi implements exp(-i phi G)"
            .to_string(),
        "fidelity_loss = 1 - sqrt(<cat|rho_out|cat>)".to_string(),
        format!(
            "timing={}",
            if cfg.timing {
                "on"
            } else {
                "off (wall_time_s reported as 0)"
            }
        ),
    ]
}

/// Writes the header and the records. Call it with whatever records are
/// available, including a partial set after failures.
pub fn write_csv<W: Write>(
    out: W,
    cfg: &SweepConfig,
    records: &[BenchmarkRecord],
) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    for line in csv_header(cfg) {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.write_record([
            r.epsilon.to_string(),
            r.mode.name().to_string(),
            r.a.to_string(),
            format!("{:e}", r.fidelity_loss),
            r.slot_count.to_string(),
            r.wall_time_s.to_string(),
        ])?;
    }
    w.flush()
}

#[derive(Debug, thiserror::Error)]
pub enum CsvReadError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("row {row}: {reason}")]
    Row { row: usize, reason: String },
}

/// Reads records written by [`write_csv`], skipping `#` lines.
pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchmarkRecord>, CsvReadError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let bad = |reason: &str| CsvReadError::Row {
            row: i + 1,
            reason: reason.to_string(),
        };
        let f = |k: usize| {
            row.get(k)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| bad(CSV_COLUMNS[k]))
        };
        records.push(BenchmarkRecord {
            epsilon: f(0)?,
            mode: row
                .get(1)
                .and_then(Mode::from_name)
                .ok_or_else(|| bad("mode"))?,
            a: f(2)?,
            fidelity_loss: f(3)?,
            slot_count: row
                .get(4)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("slot_count"))?,
            wall_time_s: f(5)?,
        });
    }
    Ok(records)
}
