//! Joint system-bath propagation and error-phase analysis.
//!
//! The actual propagator of a sequence is written `U = U_ctrl exp(-i Phi)`
//! with `U_ctrl` the intended control unitary. The first-order phase is the
//! time integral of the error Hamiltonian in the toggling frame of the
//! intended control, including the systematic amplitude error.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::operator::{
    c, cis, hermitian_log, mod_bath, pauli_bath_components, spectral_norm, DenseOperator,
    HermitianEigen, PauliString, C64,
};
use crate::pulses::{ControlSegment, Generator, PulseSequence};
use crate::random::{self, Rng};

/// Midpoint subdivisions per segment for shapes that are not constant.
pub const DEFAULT_SUBSTEPS: usize = 64;

/// `H_e = I_S ⊗ H_B + sum sigma_s ⊗ B_s` on `n_system + n_bath` qubits.
#[derive(Clone, Debug)]
pub struct ErrorModel {
    n_system: usize,
    n_bath: usize,
    h_bath: DenseOperator,
    couplings: Vec<(PauliString, DenseOperator)>,
    general: bool,
    norm_bound: f64,
    h_e: DenseOperator,
}

impl ErrorModel {
    /// Linear decoherence model: every coupling string must have weight one.
    pub fn linear(
        n_system: usize,
        h_bath: DenseOperator,
        couplings: Vec<(PauliString, DenseOperator)>,
    ) -> Result<Self> {
        if couplings.iter().any(|(s, _)| s.weight() != 1) {
            return Err(Error::InvalidArgument(
                "linear decoherence couples single-qubit Paulis only",
            ));
        }
        Self::build(n_system, h_bath, couplings, false)
    }

    /// Model with arbitrary system Pauli strings in the couplings.
    pub fn general(
        n_system: usize,
        h_bath: DenseOperator,
        couplings: Vec<(PauliString, DenseOperator)>,
    ) -> Result<Self> {
        Self::build(n_system, h_bath, couplings, true)
    }

    fn build(
        n_system: usize,
        h_bath: DenseOperator,
        couplings: Vec<(PauliString, DenseOperator)>,
        general: bool,
    ) -> Result<Self> {
        if h_bath.n_system() != 0 {
            return Err(Error::InvalidArgument(
                "bath Hamiltonian must be a pure bath operator",
            ));
        }
        let n_bath = h_bath.n_bath();
        h_bath.ensure_hermitian()?;
        let mut h_e = h_bath.embed_bath(n_system);
        let mut norm_bound = spectral_norm(&h_bath)?;
        for (s, b) in &couplings {
            if s.len() != n_system {
                return Err(Error::DimensionMismatch {
                    expected: n_system,
                    found: s.len(),
                });
            }
            if b.n_system() != 0 || b.n_bath() != n_bath {
                return Err(Error::DimensionMismatch {
                    expected: 1 << n_bath,
                    found: b.dim(),
                });
            }
            norm_bound += spectral_norm(b)?;
            h_e += &DenseOperator::system_bath(&s.to_operator(0), b);
        }
        Ok(Self {
            n_system,
            n_bath,
            h_bath,
            couplings,
            general,
            norm_bound,
            h_e,
        })
    }

    /// No error at all.
    pub fn zero(n_system: usize, n_bath: usize) -> Self {
        Self::build(n_system, DenseOperator::zeros(0, n_bath), Vec::new(), false)
            .expect("zero model")
    }

    /// Random linear model: Hermitian `B_alpha^(i)` of spectral norm `coupling_norm`
    /// for every qubit and axis, and a random `H_B` of norm `bath_norm`.
    pub fn random_linear(
        rng: &mut Rng,
        n_system: usize,
        n_bath: usize,
        coupling_norm: f64,
        bath_norm: f64,
    ) -> Self {
        let h_bath = random::hermitian(rng, 0, n_bath, bath_norm);
        let mut couplings = Vec::new();
        for q in 0..n_system {
            for axis in [crate::Pauli::X, crate::Pauli::Y, crate::Pauli::Z] {
                let s = PauliString::single(n_system, q, axis).expect("qubit in range");
                couplings.push((s, random::hermitian(rng, 0, n_bath, coupling_norm)));
            }
        }
        Self::linear(n_system, h_bath, couplings).expect("valid by construction")
    }

    /// Every term multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let couplings = self
            .couplings
            .iter()
            .map(|(s, b)| (s.clone(), b.scale(factor)))
            .collect();
        Self::build(
            self.n_system,
            self.h_bath.scale(factor),
            couplings,
            self.general,
        )
        .expect("scaling keeps validity")
    }

    pub fn n_system(&self) -> usize {
        self.n_system
    }

    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    pub fn h_bath(&self) -> &DenseOperator {
        &self.h_bath
    }

    pub fn couplings(&self) -> &[(PauliString, DenseOperator)] {
        &self.couplings
    }

    pub fn is_general(&self) -> bool {
        self.general
    }

    /// `||H_B|| + sum ||B_s||`, an upper bound on `||H_e||`.
    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    /// Assembled joint error Hamiltonian.
    pub fn h_e(&self) -> &DenseOperator {
        &self.h_e
    }

    fn check_sequence(&self, seq: &PulseSequence) -> Result<()> {
        if seq.n_system() != self.n_system {
            return Err(Error::DimensionMismatch {
                expected: self.n_system,
                found: seq.n_system(),
            });
        }
        Ok(())
    }
}

/// Constant pieces `(control amplitude, duration)` a segment is split into.
fn pieces(seg: &ControlSegment, substeps: usize, realized: bool) -> Vec<(f64, f64)> {
    let steps = if seg.shape.is_constant() || seg.generator == Generator::Idle {
        1
    } else {
        substeps.max(1)
    };
    let dt = seg.duration / steps as f64;
    (0..steps)
        .map(|k| {
            let s = (k as f64 + 0.5) / steps as f64;
            let value = if realized {
                seg.profile_at(s)
            } else {
                seg.profile_at(s) / (1.0 + seg.epsilon)
            };
            (value, dt)
        })
        .collect()
}

/// Eigendecompositions of `a G ⊗ I + H_e`, keyed by generator and amplitude bits.
struct EigenCache<'a> {
    em: &'a ErrorModel,
    generators: Vec<(Generator, DenseOperator)>,
    entries: Vec<(Generator, u64, HermitianEigen)>,
}

impl<'a> EigenCache<'a> {
    fn new(em: &'a ErrorModel) -> Self {
        Self {
            em,
            generators: Vec::new(),
            entries: Vec::new(),
        }
    }

    fn generator_operator(&mut self, g: Generator) -> Result<&DenseOperator> {
        if let Some(k) = self.generators.iter().position(|(h, _)| *h == g) {
            return Ok(&self.generators[k].1);
        }
        let op = g.operator(self.em.n_system)?.embed_system(self.em.n_bath);
        self.generators.push((g, op));
        Ok(&self.generators.last().expect("just pushed").1)
    }

    fn get(&mut self, g: Generator, amplitude: f64) -> Result<&HermitianEigen> {
        let (g, amplitude) = if amplitude == 0.0 {
            (Generator::Idle, 0.0)
        } else {
            (g, amplitude)
        };
        let key = amplitude.to_bits();
        if let Some(k) = self
            .entries
            .iter()
            .position(|(h, a, _)| *h == g && *a == key)
        {
            return Ok(&self.entries[k].2);
        }
        let h = if g == Generator::Idle {
            self.em.h_e.clone()
        } else {
            &self.generator_operator(g)?.scale(amplitude) + &self.em.h_e
        };
        let eig = HermitianEigen::new(&h)?;
        self.entries.push((g, key, eig));
        Ok(&self.entries.last().expect("just pushed").2)
    }
}

/// Exact joint propagator of `seq` under control plus `em`. Constant-shape
/// segments are exponentiated exactly; other shapes use `substeps` midpoint pieces.
pub fn propagate(seq: &PulseSequence, em: &ErrorModel, substeps: usize) -> Result<DenseOperator> {
    em.check_sequence(seq)?;
    let mut cache = EigenCache::new(em);
    let mut u = DenseOperator::identity(em.n_system, em.n_bath);
    for seg in seq.segments() {
        for (amplitude, dt) in pieces(seg, substeps, true) {
            u = &cache.get(seg.generator, amplitude)?.exp_i(dt) * &u;
        }
    }
    Ok(u)
}

/// Applies the joint propagator of `seq` to the columns of `states` in place.
pub fn propagate_states(
    seq: &PulseSequence,
    em: &ErrorModel,
    substeps: usize,
    states: &mut DMatrix<C64>,
) -> Result<()> {
    em.check_sequence(seq)?;
    let dim = 1usize << (em.n_system + em.n_bath);
    if states.nrows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: states.nrows(),
        });
    }
    let mut cache = EigenCache::new(em);
    for seg in seq.segments() {
        for (amplitude, dt) in pieces(seg, substeps, true) {
            cache.get(seg.generator, amplitude)?.evolve(dt, states);
        }
    }
    Ok(())
}

/// Midpoint discretization error estimate: `max |U(2m) - U(m)| * 4/3` for a
/// second-order rule, which approximates `max |U(m) - U_exact|`.
pub fn richardson_error(seq: &PulseSequence, em: &ErrorModel, substeps: usize) -> Result<f64> {
    let coarse = propagate(seq, em, substeps)?;
    let fine = propagate(seq, em, 2 * substeps)?;
    Ok(coarse.max_abs_diff(&fine) * 4.0 / 3.0)
}

/// `int_0^dt exp(i H t) E exp(-i H t) dt` for `H = a G ⊗ I`, via the eigenbasis of `G`.
fn toggling_integral(
    e: &DenseOperator,
    g_eig: Option<&HermitianEigen>,
    amplitude: f64,
    dt: f64,
    n_bath: usize,
) -> DenseOperator {
    let Some(eig) = g_eig.filter(|_| amplitude != 0.0) else {
        return e.scale(dt);
    };
    let v = DenseOperator::from_matrix(eig.vectors().clone(), eig_n(eig))
        .expect("square")
        .embed_system(n_bath);
    let mut rotated = e.conjugate(&v).into_matrix();
    let db = 1usize << n_bath;
    let lambdas = eig.values();
    for r in 0..rotated.nrows() {
        for col in 0..rotated.ncols() {
            let omega = amplitude * (lambdas[r / db] - lambdas[col / db]);
            rotated[(r, col)] *= phase_integral(omega, dt);
        }
    }
    let rotated = DenseOperator::from_matrix(rotated, e.n_system()).expect("square");
    rotated.conjugate(&v.adjoint())
}

fn eig_n(eig: &HermitianEigen) -> usize {
    eig.vectors().nrows().trailing_zeros() as usize
}

/// `int_0^dt exp(i omega t) dt = dt e^{i omega dt/2} sinc(omega dt/2)`.
fn phase_integral(omega: f64, dt: f64) -> C64 {
    let x = omega * dt / 2.0;
    let sinc = if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        libm::sin(x) / x
    };
    cis(x) * c(dt * sinc, 0.0)
}

/// First-order error phase of each segment, each in its own toggling frame
/// starting at the segment's beginning, paired with the segment's intended unitary.
pub fn segment_first_order_phases(
    seq: &PulseSequence,
    em: &ErrorModel,
    substeps: usize,
) -> Result<Vec<(DenseOperator, DenseOperator)>> {
    em.check_sequence(seq)?;
    let n = em.n_system;
    let mut eigs: Vec<(Generator, HermitianEigen, DenseOperator)> = Vec::new();
    let mut parts = Vec::with_capacity(seq.len());
    for seg in seq.segments() {
        let k = match eigs.iter().position(|(g, _, _)| *g == seg.generator) {
            Some(k) => k,
            None => {
                let g_sys = seg.generator.operator(n)?;
                let g_joint = g_sys.embed_system(em.n_bath);
                eigs.push((seg.generator, HermitianEigen::new(&g_sys)?, g_joint));
                eigs.len() - 1
            }
        };
        let (_, eig, g_joint) = &eigs[k];
        let mut phi = DenseOperator::zeros(n, em.n_bath);
        let mut frame = DenseOperator::identity(n, 0);
        for (amplitude, dt) in pieces(seg, substeps, false) {
            // Systematic error: the realized amplitude exceeds the intended one by epsilon.
            let e = &em.h_e + &g_joint.scale(amplitude * seg.epsilon);
            let local = toggling_integral(&e, Some(eig), amplitude, dt, em.n_bath);
            phi += &local.conjugate_by_system(&frame);
            frame = &seg.generator.unitary(amplitude * dt, n)? * &frame;
        }
        // The frame of the pieces equals the intended unitary for constant shapes
        // and is the consistent discretization of it otherwise.
        parts.push((frame, phi));
    }
    Ok(parts)
}

/// `sum_j F_{j-1}^dag Phi_j F_{j-1}` with cumulative frames `F_j = U_j ... U_1`, `F_0 = I`.
/// Each part is `(U_j, Phi_j)` with `U_j` a system-space unitary.
pub fn combine_first_order(parts: &[(DenseOperator, DenseOperator)]) -> Result<DenseOperator> {
    let Some((u0, phi0)) = parts.first() else {
        return Err(Error::InvalidArgument("no parts to combine"));
    };
    let (n, nb) = (phi0.n_system(), phi0.n_bath());
    let mut frame = DenseOperator::identity(u0.n_qubits(), 0);
    let mut total = DenseOperator::zeros(n, nb);
    for (u, phi) in parts {
        if !phi.same_shape(phi0) {
            return Err(Error::DimensionMismatch {
                expected: phi0.dim(),
                found: phi.dim(),
            });
        }
        if u.dim() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: u.dim(),
            });
        }
        total += &phi.conjugate_by_system(&frame);
        frame = u * &frame;
    }
    Ok(total.hermitian_part())
}

/// First-order toggling-frame error phase of `seq`, exact for constant shapes
/// and midpoint-discretized with [`DEFAULT_SUBSTEPS`] pieces otherwise.
pub fn first_order_phase(seq: &PulseSequence, em: &ErrorModel) -> Result<DenseOperator> {
    first_order_phase_with_substeps(seq, em, DEFAULT_SUBSTEPS)
}

pub fn first_order_phase_with_substeps(
    seq: &PulseSequence,
    em: &ErrorModel,
    substeps: usize,
) -> Result<DenseOperator> {
    if seq.is_empty() {
        em.check_sequence(seq)?;
        return Ok(DenseOperator::zeros(em.n_system, em.n_bath));
    }
    combine_first_order(&segment_first_order_phases(seq, em, substeps)?)
}

/// Exact and first-order error phases of one sequence.
#[derive(Clone, Debug)]
pub struct ErrorPhaseReport {
    pub phi_exact: DenseOperator,
    pub phi_first_order: DenseOperator,
    pub phi_exact_mod_b: DenseOperator,
    pub phi_first_mod_b: DenseOperator,
    /// `|| mod_bath(phi_exact) ||`.
    pub epg_exact: f64,
    /// `|| mod_bath(phi_first_order) ||`.
    pub epg_first: f64,
    /// Bath operators of `phi_exact` per system Pauli string.
    pub pauli_components: BTreeMap<PauliString, DenseOperator>,
}

impl ErrorPhaseReport {
    /// `|| phi_exact - phi_first_order ||`, the higher-order remainder.
    pub fn residual(&self) -> f64 {
        spectral_norm(&(&self.phi_exact - &self.phi_first_order).hermitian_part())
            .unwrap_or(f64::NAN)
    }
}

/// Extracts `Phi` from `U = (U_ctrl ⊗ I) exp(-i Phi)` and compares it with the first-order phase.
pub fn error_phase(
    seq: &PulseSequence,
    em: &ErrorModel,
    substeps: usize,
) -> Result<ErrorPhaseReport> {
    let u = propagate(seq, em, substeps)?;
    let u_ctrl = seq.intended_unitary().embed_system(em.n_bath);
    let phi_exact = hermitian_log(&(&u_ctrl.adjoint() * &u))?;
    let phi_first_order = first_order_phase_with_substeps(seq, em, substeps)?;
    let phi_exact_mod_b = mod_bath(&phi_exact);
    let phi_first_mod_b = mod_bath(&phi_first_order);
    let epg_exact = spectral_norm(&phi_exact_mod_b.hermitian_part())?;
    let epg_first = spectral_norm(&phi_first_mod_b.hermitian_part())?;
    let pauli_components = pauli_bath_components(&phi_exact);
    Ok(ErrorPhaseReport {
        phi_exact,
        phi_first_order,
        phi_exact_mod_b,
        phi_first_mod_b,
        epg_exact,
        epg_first,
        pauli_components,
    })
}

/// Error per gate: `|| mod_bath(Phi) ||` of the exact phase.
pub fn epg(seq: &PulseSequence, em: &ErrorModel) -> Result<f64> {
    Ok(error_phase(seq, em, DEFAULT_SUBSTEPS)?.epg_exact)
}
