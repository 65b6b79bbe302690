//! Line-oriented pulse sequence text format.
//!
//! ```text
//! # dcg-sequence n_system=2 tau=1
//! # t_start	t_end	generator	qubits	amplitude	shape	reversed	epsilon
//! 0	1	x	0,1	1.5707963267948966	rect	0	0
//! ```
//!
//! Fields are tab-separated, idle segments use `-` for the qubit list, and
//! floats are printed in shortest round-trip form.

use std::fmt::Write as _;

use dcg_core::pulses::{ControlSegment, Generator, PulseSequence, PulseShape};

pub const MAGIC: &str = "dcg-sequence";
pub const COLUMNS: [&str; 8] = [
    "t_start",
    "t_end",
    "generator",
    "qubits",
    "amplitude",
    "shape",
    "reversed",
    "epsilon",
];

/// Segment boundaries may drift by accumulated rounding; anything larger is a gap.
const CONTIGUITY_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("missing `# {MAGIC} n_system=<n> tau=<t>` header")]
    MissingHeader,
    #[error(transparent)]
    Core(#[from] dcg_core::Error),
}

pub fn write_sequence(seq: &PulseSequence) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# {MAGIC} n_system={} tau={}",
        seq.n_system(),
        seq.tau()
    )
    .unwrap();
    writeln!(out, "# {}", COLUMNS.join("\t")).unwrap();
    for (start, end, seg) in seq.timeline() {
        let qubits = seg.generator.qubits();
        let qubits = if qubits.is_empty() {
            "-".to_string()
        } else {
            qubits
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            out,
            "{start}\t{end}\t{}\t{qubits}\t{}\t{}\t{}\t{}",
            seg.generator.name(),
            seg.amplitude,
            seg.shape.name(),
            u8::from(seg.reversed),
            seg.epsilon
        )
        .unwrap();
    }
    out
}

fn header_value<T: std::str::FromStr>(fields: &[&str], key: &str) -> Option<T> {
    fields
        .iter()
        .find_map(|f| f.strip_prefix(key)?.strip_prefix('=')?.parse().ok())
}

pub fn parse_sequence(text: &str) -> Result<PulseSequence, FormatError> {
    let mut seq: Option<PulseSequence> = None;
    let mut clock = 0.0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let bad = |reason: String| FormatError::Line { line, reason };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let fields: Vec<&str> = comment.split_whitespace().collect();
            if fields.first() == Some(&MAGIC) {
                let n_system =
                    header_value(&fields, "n_system").ok_or_else(|| bad("bad n_system".into()))?;
                let tau = header_value(&fields, "tau").ok_or_else(|| bad("bad tau".into()))?;
                seq = Some(PulseSequence::new(n_system, tau));
            }
            continue;
        }
        let seq = seq.as_mut().ok_or(FormatError::MissingHeader)?;
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if fields.len() != COLUMNS.len() {
            return Err(bad(format!(
                "expected {} tab-separated fields, found {}",
                COLUMNS.len(),
                fields.len()
            )));
        }
        let num = |i: usize| -> Result<f64, FormatError> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| bad(format!("bad {} `{}`", COLUMNS[i], fields[i])))
        };
        let (start, end) = (num(0)?, num(1)?);
        if (start - clock).abs() > CONTIGUITY_TOL {
            return Err(bad(format!(
                "segment starts at {start}, previous one ended at {clock}"
            )));
        }
        let qubits: Vec<usize> = match fields[3] {
            "-" | "" => Vec::new(),
            list => list
                .split(',')
                .map(|q| q.parse().map_err(|_| bad(format!("bad qubit `{q}`"))))
                .collect::<Result<_, _>>()?,
        };
        let generator =
            Generator::from_parts(fields[2], &qubits).map_err(|e| bad(e.to_string()))?;
        let shape = PulseShape::from_name(fields[5])
            .ok_or_else(|| bad(format!("unknown shape `{}`", fields[5])))?;
        let reversed = match fields[6] {
            "0" | "false" => false,
            "1" | "true" => true,
            other => return Err(bad(format!("bad reversed flag `{other}`"))),
        };
        let mut seg =
            ControlSegment::new(generator, num(4)?, end - start, shape).with_epsilon(num(7)?);
        seg.reversed = reversed;
        seq.push(seg).map_err(|e| bad(e.to_string()))?;
        clock = end;
    }
    seq.ok_or(FormatError::MissingHeader)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcg_core::compile::{compile_dcg, CompileOptions, PrimitiveGate};

    #[test]
    fn round_trip_preserves_segments() {
        let opts = CompileOptions::new(2, 1.0)
            .with_shape(PulseShape::Triangular)
            .with_epsilon(1e-3);
        let seq = compile_dcg(PrimitiveGate::new(Generator::zz(0, 1), 0.4), &opts).unwrap();
        let text = write_sequence(&seq);
        let back = parse_sequence(&text).unwrap();
        assert_eq!(back.len(), seq.len());
        assert_eq!(back.slot_count(), 16);
        for (a, b) in seq.segments().iter().zip(back.segments()) {
            assert_eq!(a.generator, b.generator);
            assert_eq!(a.amplitude, b.amplitude);
            assert_eq!(a.shape, b.shape);
            assert_eq!(a.reversed, b.reversed);
            assert_eq!(a.epsilon, b.epsilon);
            assert!((a.duration - b.duration).abs() < 1e-12);
        }
        assert_eq!(write_sequence(&back), text);
    }

    #[test]
    fn idle_segments_use_dash() {
        let seq = PulseSequence::from_segments(1, 1.0, vec![ControlSegment::idle(1.0)]).unwrap();
        let text = write_sequence(&seq);
        assert!(text
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("0\t1\tidle\t-\t0\trect\t0\t0"));
        assert_eq!(
            parse_sequence(&text).unwrap().segments()[0].generator,
            Generator::Idle
        );
    }

    #[test]
    fn rejects_gaps_and_bad_fields() {
        let head = "# dcg-sequence n_system=1 tau=1\n";
        let gap = format!("{head}0\t1\tx\t0\t1\trect\t0\t0\n2\t3\tx\t0\t1\trect\t0\t0\n");
        assert!(matches!(
            parse_sequence(&gap),
            Err(FormatError::Line { line: 3, .. })
        ));
        let short = format!("{head}0\t1\tx\t0\t1\trect\t0\n");
        assert!(parse_sequence(&short).is_err());
        let qubit = format!("{head}0\t1\tx\t4\t1\trect\t0\t0\n");
        assert!(parse_sequence(&qubit).is_err());
        assert!(matches!(
            parse_sequence("0\t1\tx\t0\t1\trect\t0\t0\n"),
            Err(FormatError::MissingHeader)
        ));
    }
}
