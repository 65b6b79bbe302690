//! Pulse shapes, bounded-strength control segments and pulse sequences.
//!
//! A segment drives `amplitude * (1 + epsilon) * h0(s) * G` for a Pauli-type
//! generator `G` over its duration, with `s` the fractional time in `[0, 1]`.
//! Gates are parametrized by pulse area: a segment of area `phi` implements
//! `exp(-i phi G)`.

use alloc::vec::Vec;
use core::fmt;

use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::operator::{c, embed_pauli, DenseOperator, Pauli, PauliString};

/// Relative slack applied to the closed bounds in [`validate`].
pub const BOUND_SLACK: f64 = 1e-12;

/// Fixed pulse profile `h0` on `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PulseShape {
    /// `h0 = 1`.
    #[default]
    Rectangular,
    /// `h0(s) = 2 min(s, 1 - s)`; symmetric, peak one, area one half.
    Triangular,
    /// `h0(s) = 2 s`; unit area and not symmetric under reversal.
    Ramp,
}

impl PulseShape {
    pub const ALL: [PulseShape; 3] = [
        PulseShape::Rectangular,
        PulseShape::Triangular,
        PulseShape::Ramp,
    ];

    pub fn h0(self, s: f64) -> f64 {
        match self {
            PulseShape::Rectangular => 1.0,
            PulseShape::Triangular => 2.0 * s.min(1.0 - s),
            PulseShape::Ramp => 2.0 * s,
        }
    }

    /// `int_0^1 h0(s) ds`.
    pub fn integral(self) -> f64 {
        match self {
            PulseShape::Triangular => 0.5,
            _ => 1.0,
        }
    }

    /// `max |h0|`.
    pub fn peak(self) -> f64 {
        match self {
            PulseShape::Rectangular => 1.0,
            PulseShape::Triangular => 1.0,
            PulseShape::Ramp => 2.0,
        }
    }

    pub fn is_constant(self) -> bool {
        self == PulseShape::Rectangular
    }

    pub fn name(self) -> &'static str {
        match self {
            PulseShape::Rectangular => "rect",
            PulseShape::Triangular => "tri",
            PulseShape::Ramp => "ramp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "rect" | "rectangular" => Some(PulseShape::Rectangular),
            "tri" | "triangular" => Some(PulseShape::Triangular),
            "ramp" => Some(PulseShape::Ramp),
            _ => None,
        }
    }
}

impl fmt::Display for PulseShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rotation axis available to single-qubit controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
        }
    }
}

/// Control Hamiltonian term driven by a segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// No control; the segment only lets time pass.
    Idle,
    /// `sum_{i in qubits} sigma_axis^(i)`, a set of simultaneous single-qubit
    /// pulses sharing one profile. `qubits` is a bit mask with bit `i` for qubit `i`.
    Rotation { axis: Axis, qubits: u32 },
    /// `sigma_z^(i) sigma_z^(j)`.
    ZZ(usize, usize),
}

impl Generator {
    pub fn x(qubit: usize) -> Self {
        Generator::Rotation {
            axis: Axis::X,
            qubits: 1 << qubit,
        }
    }

    pub fn y(qubit: usize) -> Self {
        Generator::Rotation {
            axis: Axis::Y,
            qubits: 1 << qubit,
        }
    }

    pub fn zz(i: usize, j: usize) -> Self {
        Generator::ZZ(i.min(j), i.max(j))
    }

    /// The same rotation on every one of `n_system` qubits.
    pub fn collective(axis: Axis, n_system: usize) -> Self {
        Generator::Rotation {
            axis,
            qubits: ((1u64 << n_system) - 1) as u32,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Idle => "idle",
            Generator::Rotation { axis: Axis::X, .. } => "x",
            Generator::Rotation { axis: Axis::Y, .. } => "y",
            Generator::ZZ(..) => "zz",
        }
    }

    /// Qubits the generator acts on, ascending.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Generator::Idle => Vec::new(),
            Generator::Rotation { qubits, .. } => {
                (0..32).filter(|q| qubits >> q & 1 == 1).collect()
            }
            Generator::ZZ(i, j) => alloc::vec![i, j],
        }
    }

    /// Builds a generator from its name and qubit list.
    pub fn from_parts(name: &str, qubits: &[usize]) -> Result<Self> {
        let mask = || -> Result<u32> {
            if qubits.is_empty() {
                return Err(Error::InvalidArgument("rotation needs at least one qubit"));
            }
            qubits.iter().try_fold(0u32, |m, &q| {
                if q >= 32 {
                    Err(Error::QubitOutOfRange {
                        index: q,
                        n_qubits: 32,
                    })
                } else {
                    Ok(m | 1 << q)
                }
            })
        };
        match name {
            "idle" => Ok(Generator::Idle),
            "x" => Ok(Generator::Rotation {
                axis: Axis::X,
                qubits: mask()?,
            }),
            "y" => Ok(Generator::Rotation {
                axis: Axis::Y,
                qubits: mask()?,
            }),
            "zz" => match qubits {
                [i, j] if i != j => Ok(Generator::zz(*i, *j)),
                _ => Err(Error::InvalidArgument("zz needs two distinct qubits")),
            },
            _ => Err(Error::InvalidArgument("unknown generator")),
        }
    }

    pub fn check(&self, n_system: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_system {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    n_qubits: n_system,
                });
            }
        }
        if let Generator::ZZ(i, j) = *self {
            if i == j {
                return Err(Error::InvalidArgument("zz needs two distinct qubits"));
            }
        }
        Ok(())
    }

    /// The generator as a system-space operator.
    pub fn operator(&self, n_system: usize) -> Result<DenseOperator> {
        self.check(n_system)?;
        Ok(match *self {
            Generator::Idle => DenseOperator::zeros(n_system, 0),
            Generator::Rotation { axis, .. } => {
                let mut total = DenseOperator::zeros(n_system, 0);
                for q in self.qubits() {
                    total += &embed_pauli(axis.pauli(), q, n_system)?;
                }
                total
            }
            Generator::ZZ(i, j) => {
                let mut factors = alloc::vec![Pauli::I; n_system];
                factors[i] = Pauli::Z;
                factors[j] = Pauli::Z;
                PauliString::new(factors).to_operator(0)
            }
        })
    }

    /// `exp(-i area G)` on the system register.
    pub fn unitary(&self, area: f64, n_system: usize) -> Result<DenseOperator> {
        self.check(n_system)?;
        let (cos, sin) = (libm::cos(area), libm::sin(area));
        let rotation = |g: &DenseOperator| {
            &DenseOperator::identity(n_system, 0).scale(cos) + &g.scale_complex(c(0.0, -sin))
        };
        Ok(match *self {
            Generator::Idle => DenseOperator::identity(n_system, 0),
            // The single-qubit terms commute, so the exponential factorizes.
            Generator::Rotation { axis, .. } => {
                let mut u = DenseOperator::identity(n_system, 0);
                for q in self.qubits() {
                    u = &u * &rotation(&embed_pauli(axis.pauli(), q, n_system)?);
                }
                u
            }
            Generator::ZZ(..) => rotation(&self.operator(n_system)?),
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let qubits = self.qubits();
        if !qubits.is_empty() {
            f.write_str("(")?;
            for (k, q) in qubits.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{q}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// One bounded-strength pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlSegment {
    pub generator: Generator,
    /// Peak-normalized amplitude `theta` (rad per unit time).
    pub amplitude: f64,
    pub duration: f64,
    pub shape: PulseShape,
    /// Drive the time-reversed profile `h0(1 - s)`.
    pub reversed: bool,
    /// Systematic relative amplitude error: the realized profile is `h0 (1 + epsilon)`.
    pub epsilon: f64,
}

impl ControlSegment {
    pub fn new(generator: Generator, amplitude: f64, duration: f64, shape: PulseShape) -> Self {
        Self {
            generator,
            amplitude,
            duration,
            shape,
            reversed: false,
            epsilon: 0.0,
        }
    }

    /// Zero-amplitude segment of the given length.
    pub fn idle(duration: f64) -> Self {
        Self::new(Generator::Idle, 0.0, duration, PulseShape::Rectangular)
    }

    pub fn reversed(mut self) -> Self {
        self.reversed = !self.reversed;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// Shape value at fractional time `s`, honouring reversal.
    pub fn h0_at(&self, s: f64) -> f64 {
        if self.reversed {
            self.shape.h0(1.0 - s)
        } else {
            self.shape.h0(s)
        }
    }

    /// Realized control amplitude at fractional time `s` in `[0, 1]`.
    pub fn profile_at(&self, s: f64) -> f64 {
        if self.generator == Generator::Idle {
            return 0.0;
        }
        self.amplitude * (1.0 + self.epsilon) * self.h0_at(s)
    }

    /// Realized control amplitude at absolute time `t` for a segment starting at `t_start`.
    pub fn profile_value(&self, t_start: f64, t: f64) -> Result<f64> {
        let s = (t - t_start) / self.duration;
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidArgument("time lies outside the segment"));
        }
        Ok(self.profile_at(s))
    }

    /// Intended pulse area `int theta h0 dt`, ignoring `epsilon`.
    pub fn area(&self) -> f64 {
        if self.generator == Generator::Idle {
            return 0.0;
        }
        self.amplitude * self.duration * self.shape.integral()
    }

    /// Largest realized amplitude `|theta (1 + epsilon)| * peak`.
    pub fn peak_amplitude(&self) -> f64 {
        if self.generator == Generator::Idle {
            return 0.0;
        }
        (self.amplitude * (1.0 + self.epsilon)).abs() * self.shape.peak()
    }

    /// `exp(-i area G)` with `epsilon` ignored.
    pub fn intended_unitary(&self, n_system: usize) -> Result<DenseOperator> {
        self.generator.unitary(self.area(), n_system)
    }

    /// Control-only unitary including the systematic amplitude error.
    pub fn realized_unitary(&self, n_system: usize) -> Result<DenseOperator> {
        self.generator
            .unitary(self.area() * (1.0 + self.epsilon), n_system)
    }
}

/// Constraints of the control hardware.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlLimits {
    /// Minimum switching time.
    pub tau_min: f64,
    /// Maximum control amplitude.
    pub h_max: f64,
}

impl Default for ControlLimits {
    fn default() -> Self {
        Self {
            tau_min: 1.0,
            h_max: 2.0,
        }
    }
}

impl ControlLimits {
    pub fn new(tau_min: f64, h_max: f64) -> Self {
        Self { tau_min, h_max }
    }

    /// Only the switching time is bounded.
    pub fn unbounded_amplitude(tau_min: f64) -> Self {
        Self {
            tau_min,
            h_max: f64::INFINITY,
        }
    }
}

/// Contiguous sequence of segments on an `n_system`-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence {
    n_system: usize,
    /// Slot length used for [`PulseSequence::slot_count`].
    tau: f64,
    segments: Vec<ControlSegment>,
}

impl PulseSequence {
    pub fn new(n_system: usize, tau: f64) -> Self {
        Self {
            n_system,
            tau,
            segments: Vec::new(),
        }
    }

    pub fn from_segments(n_system: usize, tau: f64, segments: Vec<ControlSegment>) -> Result<Self> {
        let mut seq = Self::new(n_system, tau);
        for seg in segments {
            seq.push(seg)?;
        }
        Ok(seq)
    }

    pub fn push(&mut self, segment: ControlSegment) -> Result<()> {
        segment.generator.check(self.n_system)?;
        if !(segment.duration > 0.0) || !segment.duration.is_finite() {
            return Err(Error::InvalidArgument(
                "segment duration must be positive and finite",
            ));
        }
        self.segments.push(segment);
        Ok(())
    }

    /// Appends `other`, which must act on the same register.
    pub fn extend(&mut self, other: &PulseSequence) -> Result<()> {
        if other.n_system != self.n_system {
            return Err(Error::DimensionMismatch {
                expected: self.n_system,
                found: other.n_system,
            });
        }
        self.segments.extend_from_slice(&other.segments);
        Ok(())
    }

    pub fn segments(&self) -> &[ControlSegment] {
        &self.segments
    }

    pub fn n_system(&self) -> usize {
        self.n_system
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Number of `tau`-long slots the sequence occupies.
    pub fn slot_count(&self) -> usize {
        libm::round(self.total_duration() / self.tau) as usize
    }

    /// `(t_start, t_end, segment)` for every segment.
    pub fn timeline(&self) -> impl Iterator<Item = (f64, f64, &ControlSegment)> + '_ {
        let mut t = 0.0;
        self.segments.iter().map(move |seg| {
            let start = t;
            t += seg.duration;
            (start, t, seg)
        })
    }

    /// Sets the systematic amplitude error on every segment.
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        for seg in &mut self.segments {
            seg.epsilon = epsilon;
        }
        self
    }

    /// Time-ordered product of segment unitaries with `epsilon` ignored.
    pub fn intended_unitary(&self) -> DenseOperator {
        self.product(|seg| seg.intended_unitary(self.n_system))
    }

    /// Time-ordered product of segment unitaries including `epsilon`.
    pub fn realized_unitary(&self) -> DenseOperator {
        self.product(|seg| seg.realized_unitary(self.n_system))
    }

    fn product(&self, f: impl Fn(&ControlSegment) -> Result<DenseOperator>) -> DenseOperator {
        self.segments
            .iter()
            .fold(DenseOperator::identity(self.n_system, 0), |acc, seg| {
                // Generators were checked against the register on insertion.
                &f(seg).expect("generator fits the register") * &acc
            })
    }
}

/// Builds a segment with pulse area `area` over `duration`.
pub fn primitive_gate(
    generator: Generator,
    area: f64,
    duration: f64,
    shape: PulseShape,
) -> ControlSegment {
    if generator == Generator::Idle {
        return ControlSegment::idle(duration);
    }
    let amplitude = area / (duration * shape.integral());
    ControlSegment::new(generator, amplitude, duration, shape)
}

/// Pulse area of the gate written `C_{angle}` in the `X_{2 theta} = exp(-i theta X)` naming.
pub fn area_from_rotation_angle(angle: f64) -> f64 {
    angle / 2.0
}

/// Two-segment identity pulse: `h0` at `+2 theta` for `tau`, then the
/// time-reversed `h0` at `-2 theta` for `tau`.
///
/// Its first-order error phase equals that of [`seq_h2`] with the same `theta`
/// and `tau` for any error Hamiltonian and any shape: both drive the rotation
/// angle through the same values for the same lengths of time.
pub fn seq_h1(
    theta: f64,
    tau: f64,
    generator: Generator,
    shape: PulseShape,
    n_system: usize,
) -> Result<PulseSequence> {
    let up = ControlSegment::new(generator, 2.0 * theta, tau, shape);
    let down = ControlSegment::new(generator, -2.0 * theta, tau, shape).reversed();
    PulseSequence::from_segments(n_system, tau, alloc::vec![up, down])
}

/// Single segment at amplitude `theta` with `h0` stretched over `2 tau`;
/// implements `exp(-i 2 tau theta int(h0) G)`.
pub fn seq_h2(
    theta: f64,
    tau: f64,
    generator: Generator,
    shape: PulseShape,
    n_system: usize,
) -> Result<PulseSequence> {
    let seg = ControlSegment::new(generator, theta, 2.0 * tau, shape);
    PulseSequence::from_segments(n_system, tau, alloc::vec![seg])
}

/// Every segment violating the switching-time or amplitude bound. Both bounds are closed.
pub fn validate(seq: &PulseSequence, limits: ControlLimits) -> ValidationReport {
    let mut violations = Vec::new();
    for (index, seg) in seq.segments().iter().enumerate() {
        if seg.duration < limits.tau_min * (1.0 - BOUND_SLACK) {
            violations.push(Error::DurationTooShort {
                index,
                duration: seg.duration,
                tau_min: limits.tau_min,
            });
        }
        let amplitude = seg.peak_amplitude();
        if amplitude > limits.h_max * (1.0 + BOUND_SLACK) {
            violations.push(Error::AmplitudeTooLarge {
                index,
                amplitude,
                h_max: limits.h_max,
            });
        }
    }
    ValidationReport { violations }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Error>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(e) => Err(e),
        }
    }
}

/// Largest entrywise distance between `a` and `b` after removing the best global phase.
pub fn phase_distance(a: &DenseOperator, b: &DenseOperator) -> f64 {
    let overlap = (&a.adjoint() * b).trace();
    let phase = if overlap.modulus() > 0.0 {
        overlap / c(overlap.modulus(), 0.0)
    } else {
        c(1.0, 0.0)
    };
    a.scale_complex(phase).max_abs_diff(b)
}

/// `|Tr(a^dag b)| / dim`, equal to one iff `b` is `a` up to a global phase (for unitaries).
pub fn phase_fidelity(a: &DenseOperator, b: &DenseOperator) -> f64 {
    (&a.adjoint() * b).trace().modulus() / a.dim() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn rectangular_profile_is_constant_and_symmetric() {
        let seg = ControlSegment::new(Generator::x(0), 0.5, 2.0, PulseShape::Rectangular);
        for k in 0..=10 {
            let t = 3.0 + 0.2 * k as f64;
            assert_eq!(seg.profile_value(3.0, t).unwrap(), 0.5);
            assert_eq!(seg.reversed().profile_value(3.0, t).unwrap(), 0.5);
        }
        assert!(seg.profile_value(3.0, 5.5).is_err());
    }

    #[test]
    fn reversed_profiles_mirror_the_shape() {
        for shape in [PulseShape::Triangular, PulseShape::Ramp] {
            let seg = ControlSegment::new(Generator::y(1), 1.3, 1.0, shape);
            let rev = seg.reversed();
            for k in 0..=16 {
                let s = k as f64 / 16.0;
                let mirrored = 1.3 * shape.h0(1.0 - s);
                assert!((rev.profile_value(0.0, s).unwrap() - mirrored).abs() < 1e-15);
                assert!((rev.profile_at(s) - seg.profile_at(1.0 - s)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn shape_integrals_match_quadrature() {
        for shape in PulseShape::ALL {
            let n = 100_000;
            let sum: f64 = (0..n)
                .map(|k| shape.h0((k as f64 + 0.5) / n as f64))
                .sum::<f64>()
                / n as f64;
            assert!((sum - shape.integral()).abs() < 1e-8, "{shape}");
            let peak = (0..=n)
                .map(|k| shape.h0(k as f64 / n as f64).abs())
                .fold(0.0, f64::max);
            assert!((peak - shape.peak()).abs() < 1e-4, "{shape}");
        }
    }

    #[test]
    fn epsilon_scales_the_profile() {
        let seg = ControlSegment::new(Generator::x(0), 0.5, 1.0, PulseShape::Triangular)
            .with_epsilon(0.1);
        assert!((seg.profile_at(0.5) - 0.55).abs() < 1e-15);
        assert_eq!(seg.area(), 0.25);
    }

    #[test]
    fn h1_is_identity_for_every_shape() {
        for shape in PulseShape::ALL {
            for generator in [Generator::x(0), Generator::y(1), Generator::zz(0, 1)] {
                let seq = seq_h1(0.7, 1.0, generator, shape, 2).unwrap();
                assert_eq!(seq.total_duration(), 2.0);
                let id = DenseOperator::identity(2, 0);
                assert!(seq.intended_unitary().max_abs_diff(&id) < 1e-12);
            }
        }
    }

    #[test]
    fn h2_zz_matches_closed_form() {
        let theta = 0.37;
        let tau = 1.5;
        let seq = seq_h2(theta, tau, Generator::zz(0, 1), PulseShape::Rectangular, 2).unwrap();
        assert_eq!(seq.total_duration(), 3.0);
        let zz = Generator::zz(0, 1).operator(2).unwrap();
        let expect = crate::operator::expm_unitary(&zz, 2.0 * tau * theta).unwrap();
        assert!(seq.intended_unitary().max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn h2_amplitude_above_bound_is_flagged() {
        let seq = seq_h2(2.5, 1.0, Generator::x(0), PulseShape::Rectangular, 1).unwrap();
        let report = validate(&seq, ControlLimits::default());
        assert!(matches!(
            report.violations[..],
            [Error::AmplitudeTooLarge { index: 0, .. }]
        ));
    }

    #[test]
    fn primitive_gate_areas() {
        let seg = primitive_gate(Generator::x(0), PI / 2.0, 1.0, PulseShape::Rectangular);
        let x = embed_pauli(Pauli::X, 0, 1).unwrap();
        let expect = x.scale_complex(c(0.0, -1.0));
        assert!(seg.intended_unitary(1).unwrap().max_abs_diff(&expect) < 1e-15);

        let zero = primitive_gate(Generator::zz(0, 1), 0.0, 1.0, PulseShape::Rectangular);
        assert!(
            zero.intended_unitary(2)
                .unwrap()
                .max_abs_diff(&DenseOperator::identity(2, 0))
                < 1e-15
        );

        for shape in PulseShape::ALL {
            let a = primitive_gate(Generator::y(0), 0.9, 1.0, shape)
                .intended_unitary(1)
                .unwrap();
            let b = primitive_gate(Generator::y(0), 0.9, 2.0, shape)
                .intended_unitary(1)
                .unwrap();
            assert!(a.max_abs_diff(&b) < 1e-15);
        }
        assert_eq!(area_from_rotation_angle(PI), PI / 2.0);
    }

    #[test]
    fn collective_rotation_is_tensor_power() {
        let u = Generator::collective(Axis::X, 3)
            .unitary(PI / 2.0, 3)
            .unwrap();
        let xxx = PauliString::uniform(3, Pauli::X).to_operator(0);
        // (-i)^3 = i
        assert!(u.max_abs_diff(&xxx.scale_complex(c(0.0, 1.0))) < 1e-15);
    }

    #[test]
    fn validation_bounds_are_closed() {
        let limits = ControlLimits::default();
        let ok = PulseSequence::from_segments(
            1,
            1.0,
            alloc::vec![ControlSegment::new(
                Generator::x(0),
                2.0,
                1.0,
                PulseShape::Rectangular
            )],
        )
        .unwrap();
        assert!(validate(&ok, limits).is_ok());

        let short =
            PulseSequence::from_segments(1, 1.0, alloc::vec![ControlSegment::idle(0.5)]).unwrap();
        let report = validate(&short, limits);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Error::DurationTooShort { index: 0, .. }
        ));
    }

    #[test]
    fn empty_sequence_is_identity() {
        let seq = PulseSequence::new(3, 1.0);
        assert!(
            seq.intended_unitary()
                .max_abs_diff(&DenseOperator::identity(3, 0))
                < 1e-15
        );
        assert_eq!(seq.slot_count(), 0);
    }

    #[test]
    fn generator_rejects_out_of_range_qubits() {
        assert!(Generator::x(3).operator(3).is_err());
        assert!(Generator::from_parts("zz", &[1, 1]).is_err());
        assert_eq!(
            Generator::from_parts("zz", &[2, 0]).unwrap(),
            Generator::ZZ(0, 2)
        );
        assert_eq!(
            Generator::from_parts("x", &[0, 2]).unwrap().qubits(),
            alloc::vec![0, 2]
        );
        let mut seq = PulseSequence::new(2, 1.0);
        assert!(seq
            .push(ControlSegment::new(
                Generator::zz(0, 2),
                1.0,
                1.0,
                PulseShape::Rectangular
            ))
            .is_err());
    }
}
