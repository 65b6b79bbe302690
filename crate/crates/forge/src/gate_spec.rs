//! Textual gate specifications used by the `compile` and `epg` subcommands.
//!
//! Grammar:
//!
//! ```text
//! noop
//! x:<qubits>:<area>     y:<qubits>:<area>     zz:<i>,<j>:<area>
//! h:<qubit>             cnot:<control>,<target>
//! cat
//! ```
//!
//! `<qubits>` is a comma-separated list. Areas are pulse areas in radians, so
//! `x:0:0.785398` is `exp(-i pi/4 X)`.

use std::fmt;
use std::str::FromStr;

use dcg_core::bench::cat_circuit;
use dcg_core::compile::{Gate, PrimitiveGate};
use dcg_core::pulses::Generator;

#[derive(Clone, Debug, PartialEq)]
pub enum GateSpec {
    /// A single gate of the compiler's gate set.
    Gate(Gate),
    /// The three-gate cat-state preparation circuit.
    Cat,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("invalid gate spec `{spec}`: {reason}")]
pub struct GateSpecError {
    pub spec: String,
    pub reason: String,
}

impl GateSpec {
    pub fn circuit(&self) -> Vec<Gate> {
        match self {
            GateSpec::Gate(g) => vec![*g],
            GateSpec::Cat => cat_circuit(),
        }
    }

    /// Smallest register that holds every qubit the spec touches (at least one).
    pub fn min_qubits(&self) -> usize {
        let highest = |g: &Gate| match *g {
            Gate::Noop => 0,
            Gate::Primitive(p) => p.generator.qubits().into_iter().max().unwrap_or(0),
            Gate::Hadamard(q) => q,
            Gate::Cnot { control, target } => control.max(target),
        };
        self.circuit().iter().map(highest).max().unwrap_or(0) + 1
    }

    /// The single primitive behind the spec, if it is one.
    pub fn primitive(&self) -> Option<PrimitiveGate> {
        match self {
            GateSpec::Gate(Gate::Primitive(p)) => Some(*p),
            GateSpec::Gate(Gate::Noop) => Some(PrimitiveGate::new(Generator::Idle, 0.0)),
            _ => None,
        }
    }
}

fn parse_qubits(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|q| {
            q.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad qubit index `{q}`"))
        })
        .collect()
}

impl FromStr for GateSpec {
    type Err = GateSpecError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| GateSpecError {
            spec: spec.to_string(),
            reason,
        };
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let name = parts[0].to_ascii_lowercase();
        match (name.as_str(), parts.len()) {
            ("noop", 1) => Ok(GateSpec::Gate(Gate::Noop)),
            ("cat", 1) => Ok(GateSpec::Cat),
            ("h", 2) => {
                let q = parse_qubits(parts[1]).map_err(err)?;
                match q[..] {
                    [q] => Ok(GateSpec::Gate(Gate::Hadamard(q))),
                    _ => Err(err("h takes one qubit".into())),
                }
            }
            ("cnot", 2) => {
                let q = parse_qubits(parts[1]).map_err(err)?;
                match q[..] {
                    [control, target] if control != target => Ok(GateSpec::Gate(Gate::Cnot { control, target })),
                    _ => Err(err("cnot takes two distinct qubits".into())),
                }
            }
            ("x" | "y" | "zz", 3) => {
                let qubits = parse_qubits(parts[1]).map_err(err)?;
                let area: f64 = parts[2].trim().parse().map_err(|_| err(format!("bad area `{}`", parts[2])))?;
                if !area.is_finite() {
                    return Err(err("area must be finite".into()));
                }
                let generator = Generator::from_parts(&name, &qubits).map_err(|e| err(e.to_string()))?;
                Ok(GateSpec::Gate(Gate::Primitive(PrimitiveGate::new(generator, area))))
            }
            _ => Err(err("expected noop, cat, h:<q>, cnot:<c>,<t>, x:<qs>:<area>, y:<qs>:<area> or zz:<i>,<j>:<area>".into())),
        }
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateSpec::Cat => write!(f, "cat"),
            GateSpec::Gate(Gate::Noop) => write!(f, "noop"),
            GateSpec::Gate(Gate::Hadamard(q)) => write!(f, "h:{q}"),
            GateSpec::Gate(Gate::Cnot { control, target }) => write!(f, "cnot:{control},{target}"),
            GateSpec::Gate(Gate::Primitive(p)) => {
                let qubits: Vec<String> =
                    p.generator.qubits().iter().map(|q| q.to_string()).collect();
                write!(f, "{}:{}:{}", p.generator.name(), qubits.join(","), p.area)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        assert_eq!(
            "noop".parse::<GateSpec>().unwrap(),
            GateSpec::Gate(Gate::Noop)
        );
        assert_eq!("cat".parse::<GateSpec>().unwrap(), GateSpec::Cat);
        assert_eq!(
            "h:2".parse::<GateSpec>().unwrap(),
            GateSpec::Gate(Gate::Hadamard(2))
        );
        assert_eq!(
            "cnot:0,1".parse::<GateSpec>().unwrap(),
            GateSpec::Gate(Gate::Cnot {
                control: 0,
                target: 1
            })
        );
        let zz = "zz:0,2:0.5".parse::<GateSpec>().unwrap();
        assert_eq!(zz.primitive().unwrap().generator, Generator::zz(0, 2));
        assert_eq!(zz.min_qubits(), 3);
        let x = "x:0,1:0.25".parse::<GateSpec>().unwrap();
        assert_eq!(
            x.primitive().unwrap().generator,
            Generator::from_parts("x", &[0, 1]).unwrap()
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "noop",
            "cat",
            "h:1",
            "cnot:1,0",
            "x:0:0.5",
            "y:0,2:-1.25",
            "zz:0,1:0.785",
        ] {
            let spec: GateSpec = s.parse().unwrap();
            assert_eq!(spec.to_string().parse::<GateSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for s in [
            "",
            "x:0",
            "zz:0:1",
            "zz:1,1:0.3",
            "cnot:0,0",
            "h:a",
            "x:0:nan",
            "t:0:1",
            "noop:1",
        ] {
            assert!(s.parse::<GateSpec>().is_err(), "{s}");
        }
    }
}
