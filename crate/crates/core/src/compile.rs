//! Compilation of gates and circuits into pulse sequences.
//!
//! The decoupling sequences use the `Z2 x Z2` group of collective Paulis. A
//! walk edge labelled with a generator becomes a collective pulse of area
//! `pi/2` (a collective Pauli up to phase), an identity arm becomes the
//! two-segment identity pulse and the gate arm becomes the stretched
//! single-segment gate pulse.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::euler::{
    cayley_graph, dd_group_z2z2, eulerian_cycle, eulerian_path, modify_graph_for_gate, EdgeLabel,
};
use crate::operator::{c, DenseOperator};
use crate::pulses::{
    primitive_gate, seq_h1, seq_h2, Axis, ControlSegment, Generator, PulseSequence, PulseShape,
};

/// Settings shared by every compiled sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompileOptions {
    pub n_system: usize,
    /// Slot length, normally the minimum switching time.
    pub tau: f64,
    pub shape: PulseShape,
    /// Systematic amplitude error applied to every segment.
    pub epsilon: f64,
}

impl CompileOptions {
    pub fn new(n_system: usize, tau: f64) -> Self {
        Self {
            n_system,
            tau,
            shape: PulseShape::Rectangular,
            epsilon: 0.0,
        }
    }

    pub fn with_shape(mut self, shape: PulseShape) -> Self {
        self.shape = shape;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    fn check(&self) -> Result<()> {
        if self.n_system == 0 || self.n_system > 16 {
            return Err(Error::InvalidArgument(
                "system register must have 1 to 16 qubits",
            ));
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidArgument("tau must be positive and finite"));
        }
        Ok(())
    }
}

/// `exp(-i area G)` for one control generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimitiveGate {
    pub generator: Generator,
    pub area: f64,
}

impl PrimitiveGate {
    pub fn new(generator: Generator, area: f64) -> Self {
        Self { generator, area }
    }

    pub fn unitary(&self, n_system: usize) -> Result<DenseOperator> {
        self.generator.unitary(self.area, n_system)
    }

    /// Same unitary up to a global sign with the area folded into `(-pi/2, pi/2]`.
    pub fn folded(self) -> Self {
        let mut area = self.area % PI;
        if area > FRAC_PI_2 {
            area -= PI;
        } else if area <= -FRAC_PI_2 {
            area += PI;
        }
        Self { area, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Noop,
    Primitive(PrimitiveGate),
    Hadamard(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    /// Target unitary on the system register.
    pub fn unitary(&self, n_system: usize) -> Result<DenseOperator> {
        match *self {
            Gate::Noop => Ok(DenseOperator::identity(n_system, 0)),
            Gate::Primitive(p) => p.unitary(n_system),
            Gate::Hadamard(q) => embed_single(&hadamard_matrix(), q, n_system),
            Gate::Cnot { control, target } => cnot_matrix(control, target, n_system),
        }
    }
}

/// Circuit compilation strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// One `tau`-long segment per primitive gate.
    Primitive,
    /// One 16-slot corrected gate per primitive gate.
    Dcg,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Primitive => "primitive",
            Mode::Dcg => "dcg",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "primitive" => Some(Mode::Primitive),
            "dcg" => Some(Mode::Dcg),
            _ => None,
        }
    }
}

fn hadamard_matrix() -> DenseOperator {
    let s = 1.0 / libm::sqrt(2.0);
    let m = nalgebra::DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
    DenseOperator::from_matrix(m, 1).expect("2x2")
}

fn embed_single(u: &DenseOperator, qubit: usize, n_system: usize) -> Result<DenseOperator> {
    if qubit >= n_system {
        return Err(Error::QubitOutOfRange {
            index: qubit,
            n_qubits: n_system,
        });
    }
    let left = DenseOperator::identity(qubit, 0);
    let right = DenseOperator::identity(n_system - qubit - 1, 0);
    left.kron(u)?.kron(&right)
}

fn cnot_matrix(control: usize, target: usize, n_system: usize) -> Result<DenseOperator> {
    for q in [control, target] {
        if q >= n_system {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: n_system,
            });
        }
    }
    if control == target {
        return Err(Error::InvalidArgument("cnot needs distinct qubits"));
    }
    let dim = 1usize << n_system;
    let cbit = 1 << (n_system - 1 - control);
    let tbit = 1 << (n_system - 1 - target);
    let mut m = nalgebra::DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let out = if k & cbit != 0 { k ^ tbit } else { k };
        m[(out, k)] = c(1.0, 0.0);
    }
    DenseOperator::from_matrix(m, n_system)
}

/// Primitive gates, in the order they are applied, whose product is `gate` up to a global phase.
pub fn decompose_gate(gate: Gate) -> Vec<PrimitiveGate> {
    let p = PrimitiveGate::new;
    match gate {
        Gate::Noop => Vec::new(),
        Gate::Primitive(g) => alloc::vec![g],
        Gate::Hadamard(q) => {
            alloc::vec![p(Generator::y(q), FRAC_PI_4), p(Generator::x(q), FRAC_PI_2)]
        }
        // exp(-i pi/4 Y_t) maps ZZ onto the Z_c X_t coupling; the remaining
        // rotations supply the local phases, including the S gate on the control.
        Gate::Cnot { control, target } => alloc::vec![
            p(Generator::y(target), -3.0 * FRAC_PI_4),
            p(Generator::zz(control, target), FRAC_PI_4),
            p(Generator::x(control), -3.0 * FRAC_PI_4),
            p(Generator::y(control), -FRAC_PI_4),
            p(Generator::x(control), -FRAC_PI_4),
            p(Generator::y(target), -FRAC_PI_4),
            p(Generator::x(target), -3.0 * FRAC_PI_4),
        ]
        .into_iter()
        .map(PrimitiveGate::folded)
        .collect(),
    }
}

fn generator_pulse(k: usize, opts: &CompileOptions) -> ControlSegment {
    let axis = if k == 0 { Axis::X } else { Axis::Y };
    primitive_gate(
        Generator::collective(axis, opts.n_system),
        FRAC_PI_2,
        opts.tau,
        opts.shape,
    )
}

/// Eulerian decoupling NOOP: eight collective pulses along a cycle of the Cayley graph.
pub fn compile_noop(opts: &CompileOptions) -> Result<PulseSequence> {
    opts.check()?;
    let graph = cayley_graph(&dd_group_z2z2(opts.n_system)?);
    let walk = eulerian_cycle(&graph, 0)?;
    let mut seq = PulseSequence::new(opts.n_system, opts.tau);
    for label in walk.labels(&graph) {
        let EdgeLabel::Generator(k) = label else {
            unreachable!("unmodified graphs carry generator edges only")
        };
        seq.push(generator_pulse(k, opts))?;
    }
    Ok(seq.with_epsilon(opts.epsilon))
}

/// Corrected version of `gate`, 16 slots long; a zero-area or idle gate
/// yields [`compile_noop`].
pub fn compile_dcg(gate: PrimitiveGate, opts: &CompileOptions) -> Result<PulseSequence> {
    opts.check()?;
    gate.generator.check(opts.n_system)?;
    if gate.generator == Generator::Idle || gate.area == 0.0 {
        return compile_noop(opts);
    }
    // The stretched gate pulse lasts 2 tau, so its amplitude is area / (2 tau int h0).
    let theta = gate.area / (2.0 * opts.tau * opts.shape.integral());
    let identity_arm = seq_h1(theta, opts.tau, gate.generator, opts.shape, opts.n_system)?;
    let gate_arm = seq_h2(theta, opts.tau, gate.generator, opts.shape, opts.n_system)?;

    let graph = modify_graph_for_gate(&cayley_graph(&dd_group_z2z2(opts.n_system)?))?;
    let walk = eulerian_path(&graph)?;
    let mut seq = PulseSequence::new(opts.n_system, opts.tau);
    for label in walk.labels(&graph) {
        match label {
            EdgeLabel::Generator(k) => seq.push(generator_pulse(k, opts))?,
            EdgeLabel::IdentityArm => seq.extend(&identity_arm)?,
            EdgeLabel::GateArm => seq.extend(&gate_arm)?,
        }
    }
    Ok(seq.with_epsilon(opts.epsilon))
}

/// A single uncorrected `tau`-long pulse for `gate`; an idle slot for a zero-area gate.
pub fn compile_primitive(gate: PrimitiveGate, opts: &CompileOptions) -> Result<PulseSequence> {
    opts.check()?;
    let seg =
        primitive_gate(gate.generator, gate.area, opts.tau, opts.shape).with_epsilon(opts.epsilon);
    PulseSequence::from_segments(opts.n_system, opts.tau, alloc::vec![seg])
}

/// Concatenates the compiled primitives of every gate in `circuit`.
pub fn compile_circuit(
    circuit: &[Gate],
    mode: Mode,
    opts: &CompileOptions,
) -> Result<PulseSequence> {
    opts.check()?;
    let mut seq = PulseSequence::new(opts.n_system, opts.tau);
    for gate in circuit {
        let primitives = match gate {
            Gate::Noop => alloc::vec![PrimitiveGate::new(Generator::Idle, 0.0)],
            _ => decompose_gate(*gate),
        };
        for p in primitives {
            let part = match mode {
                Mode::Primitive => compile_primitive(p, opts)?,
                Mode::Dcg => compile_dcg(p, opts)?,
            };
            seq.extend(&part)?;
        }
    }
    Ok(seq)
}
