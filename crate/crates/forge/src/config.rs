//! Flat `key=value` sweep configuration.
//!
//! ```text
//! # defaults shown
//! gamma=1
//! a_log10=-1:-5.8:-0.4
//! epsilon_values=0,1e-3,1e-2
//! modes=primitive,dcg
//! bath_state=maximally_mixed
//! timing=false
//! ```
//!
//! `a_log10` takes either a `start:stop:step` range or a comma list of
//! exponents; `a_values` lists the couplings directly. The last of the two
//! wins.

use std::fmt::Write as _;

use dcg_core::bench::{a_log10_range, BathState, BenchConfig};
use dcg_core::compile::Mode;
use dcg_core::pulses::PulseShape;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    Value {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(dcg_core::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub bench: BenchConfig,
    /// Record per-point wall time. Off by default so repeated runs emit identical bytes.
    pub timing: bool,
    /// Worker threads for the sweep; `None` uses all cores.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            bench: BenchConfig::default(),
            timing: false,
            threads: None,
        }
    }
}

fn list<T>(value: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(item)
        .collect()
}

fn float(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("`{s}` is not a number"))
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.trim()
        .parse::<T>()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn boolean(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

fn a_log10(value: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = value.split(':').collect();
    match parts[..] {
        [start, stop, step] => {
            a_log10_range(float(start)?, float(stop)?, float(step)?).map_err(|e| e.to_string())
        }
        [_] => list(value, |x| float(x).map(|e| 10f64.powf(e))),
        _ => Err("expected start:stop:step or a comma list".into()),
    }
}

fn bath_state_name(state: BathState) -> &'static str {
    match state {
        BathState::MaximallyMixed => "maximally_mixed",
        BathState::BasisAverage => "basis_average",
        BathState::PureSample(_) => "pure_sample",
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = SweepConfig::default();
        let mut pure_sample = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            let wrap = |reason: String| ConfigError::Value {
                line,
                key: key.to_string(),
                reason,
            };
            let b = &mut cfg.bench;
            match key {
                "n_system" => b.n_system = int(value).map_err(wrap)?,
                "n_bath" => b.n_bath = int(value).map_err(wrap)?,
                "gamma" => b.gamma = float(value).map_err(wrap)?,
                "a_values" => b.a_values = list(value, float).map_err(wrap)?,
                "a_log10" => b.a_values = a_log10(value).map_err(wrap)?,
                "epsilon_values" => b.epsilon_values = list(value, float).map_err(wrap)?,
                "tau" => b.tau = float(value).map_err(wrap)?,
                "shape" => {
                    b.shape = PulseShape::from_name(value)
                        .ok_or_else(|| wrap(format!("unknown shape `{value}`")))?
                }
                "modes" => {
                    b.modes = list(value, |m| {
                        Mode::from_name(m).ok_or_else(|| format!("unknown mode `{m}`"))
                    })
                    .map_err(wrap)?
                }
                "bath_state" => match value {
                    "maximally_mixed" => {
                        (b.bath_state, pure_sample) = (BathState::MaximallyMixed, false)
                    }
                    "basis_average" => {
                        (b.bath_state, pure_sample) = (BathState::BasisAverage, false)
                    }
                    "pure_sample" => pure_sample = true,
                    other => return Err(wrap(format!("unknown bath state `{other}`"))),
                },
                "seed" => b.seed = int(value).map_err(wrap)?,
                "substeps" => b.substeps = int(value).map_err(wrap)?,
                "timing" => cfg.timing = boolean(value).map_err(wrap)?,
                "threads" => {
                    cfg.threads = Some(int(value).map_err(wrap)?).filter(|&n: &usize| n > 0)
                }
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        if pure_sample {
            cfg.bench.bath_state = BathState::PureSample(cfg.bench.seed);
        }
        cfg.bench.validate().map_err(ConfigError::Invalid)?;
        Ok(cfg)
    }

    /// Canonical `key=value` rendering; parsing it gives back an equal config.
    pub fn canonical(&self) -> String {
        let b = &self.bench;
        let join = |xs: &[f64]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let modes: Vec<&str> = b.modes.iter().map(|m| m.name()).collect();
        let mut out = String::new();
        writeln!(out, "n_system={}", b.n_system).unwrap();
        writeln!(out, "n_bath={}", b.n_bath).unwrap();
        writeln!(out, "gamma={}", b.gamma).unwrap();
        writeln!(out, "a_values={}", join(&b.a_values)).unwrap();
        writeln!(out, "epsilon_values={}", join(&b.epsilon_values)).unwrap();
        writeln!(out, "tau={}", b.tau).unwrap();
        writeln!(out, "shape={}", b.shape.name()).unwrap();
        writeln!(out, "modes={}", modes.join(",")).unwrap();
        writeln!(out, "bath_state={}", bath_state_name(b.bath_state)).unwrap();
        writeln!(out, "seed={}", b.seed).unwrap();
        writeln!(out, "substeps={}", b.substeps).unwrap();
        writeln!(out, "timing={}", self.timing).unwrap();
        out
    }

    /// SHA-256 of the canonical rendering, hex encoded. Thread count is excluded
    /// because it does not change the results.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    pub fn bath_state_name(&self) -> &'static str {
        bath_state_name(self.bench.bath_state)
    }
}
