//! Cat-state benchmark on a Heisenberg spin bath.
//!
//! Three system qubits prepare `(|000> + |111>)/sqrt(2)` while every bath spin
//! couples to every other spin through `sigma . sigma` terms. Spin operators
//! are Pauli vectors, so the couplings are four times those of spin-1/2
//! operators.

use alloc::vec::Vec;
use core::cmp::Ordering;

use nalgebra::{ComplexField, DMatrix, DVector};

use crate::compile::{compile_circuit, CompileOptions, Gate, Mode};
use crate::dynamics::{propagate_states, ErrorModel, DEFAULT_SUBSTEPS};
use crate::error::{Error, Result};
use crate::operator::{c, DenseOperator, Pauli, PauliString, C64};
use crate::pulses::PulseShape;
use crate::random;

/// Initial bath state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BathState {
    /// `I / 2^n_bath`; the loss is computed from the averaged output state.
    MaximallyMixed,
    /// Mean of the losses obtained from each computational basis state of the bath.
    BasisAverage,
    /// One random pure bath state drawn from the given seed.
    PureSample(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub n_system: usize,
    pub n_bath: usize,
    /// Bath-bath coupling strength in units of `1/tau`.
    pub gamma: f64,
    /// System-bath coupling strengths.
    pub a_values: Vec<f64>,
    pub epsilon_values: Vec<f64>,
    pub tau: f64,
    pub shape: PulseShape,
    pub modes: Vec<Mode>,
    pub bath_state: BathState,
    pub seed: u64,
    /// Midpoint pieces per segment for non-rectangular shapes.
    pub substeps: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n_system: 3,
            n_bath: 5,
            gamma: 1.0,
            a_values: a_log10_range(-1.0, -5.8, -0.4).expect("valid range"),
            epsilon_values: alloc::vec![0.0, 1e-3, 1e-2],
            tau: 1.0,
            shape: PulseShape::Rectangular,
            modes: alloc::vec![Mode::Primitive, Mode::Dcg],
            bath_state: BathState::MaximallyMixed,
            seed: 0,
            substeps: DEFAULT_SUBSTEPS,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_system != 3 {
            return Err(Error::InvalidArgument(
                "the cat-state benchmark needs three system qubits",
            ));
        }
        if self.n_bath > 6 {
            return Err(Error::InvalidArgument(
                "at most six bath spins are supported",
            ));
        }
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidArgument(
                "gamma must be finite and non-negative",
            ));
        }
        if self.a_values.iter().any(|a| !(*a >= 0.0) || !a.is_finite()) {
            return Err(Error::InvalidArgument(
                "coupling strengths must be finite and non-negative",
            ));
        }
        if self.epsilon_values.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidArgument("epsilon values must be finite"));
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidArgument("tau must be positive and finite"));
        }
        if self.modes.is_empty() {
            return Err(Error::InvalidArgument("at least one mode is required"));
        }
        if self.substeps == 0 {
            return Err(Error::InvalidArgument("substeps must be at least one"));
        }
        Ok(())
    }

    /// Every `(epsilon, mode, A)` point of the sweep in output order.
    pub fn points(&self) -> Vec<(f64, Mode, f64)> {
        let mut points = Vec::new();
        for &eps in &self.epsilon_values {
            for &mode in &self.modes {
                for &a in &self.a_values {
                    points.push((eps, mode, a));
                }
            }
        }
        points.sort_by(|x, y| point_order((x.0, x.1, x.2), (y.0, y.1, y.2)));
        points
    }
}

/// `10^x` for `x = start, start + step, ...` down to (and including) `stop`.
pub fn a_log10_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step == 0.0 || !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::InvalidArgument(
            "range needs finite bounds and a non-zero step",
        ));
    }
    let span = (stop - start) / step;
    if span < -1e-9 {
        return Err(Error::InvalidArgument(
            "range step points away from the stop value",
        ));
    }
    let count = libm::floor(span + 1e-9) as usize + 1;
    Ok((0..count)
        .map(|k| libm::pow(10.0, start + k as f64 * step))
        .collect())
}

/// One sweep point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchmarkRecord {
    pub a: f64,
    pub epsilon: f64,
    pub mode: Mode,
    pub fidelity_loss: f64,
    pub slot_count: usize,
    /// Seconds spent on the point; filled in by callers that keep time.
    pub wall_time_s: f64,
}

fn point_order(x: (f64, Mode, f64), y: (f64, Mode, f64)) -> Ordering {
    x.0.total_cmp(&y.0)
        .then(x.1.cmp(&y.1))
        .then(y.2.total_cmp(&x.2))
}

/// Sorts by epsilon, then mode, then descending `A`.
pub fn sort_records(records: &mut [BenchmarkRecord]) {
    records.sort_by(|x, y| point_order((x.epsilon, x.mode, x.a), (y.epsilon, y.mode, y.a)));
}

/// `H_e = Gamma sum_{a<b} sigma^(a) . sigma^(b) + A sum_{i,a} sigma^(i) . sigma^(a)`,
/// with one coupling entry per system spin, bath spin and axis.
pub fn build_bath_hamiltonian(
    n_system: usize,
    n_bath: usize,
    gamma: f64,
    a: f64,
) -> Result<ErrorModel> {
    let axes = [Pauli::X, Pauli::Y, Pauli::Z];
    let mut h_bath = DenseOperator::zeros(0, n_bath);
    for p in 0..n_bath {
        for q in p + 1..n_bath {
            for axis in axes {
                let mut factors = alloc::vec![Pauli::I; n_bath];
                factors[p] = axis;
                factors[q] = axis;
                let term = PauliString::new(factors).to_operator(0).with_split(0)?;
                h_bath += &term.scale(gamma);
            }
        }
    }
    let mut couplings = Vec::with_capacity(3 * n_system * n_bath);
    for i in 0..n_system {
        for p in 0..n_bath {
            for axis in axes {
                let bath = PauliString::single(n_bath, p, axis)?
                    .to_operator(0)
                    .with_split(0)?;
                couplings.push((PauliString::single(n_system, i, axis)?, bath.scale(a)));
            }
        }
    }
    ErrorModel::linear(n_system, h_bath, couplings)
}

/// Hadamard on qubit 0 followed by CNOTs from qubit 0 to qubits 1 and 2.
pub fn cat_circuit() -> Vec<Gate> {
    alloc::vec![
        Gate::Hadamard(0),
        Gate::Cnot {
            control: 0,
            target: 1
        },
        Gate::Cnot {
            control: 0,
            target: 2
        },
    ]
}

/// `(|0...0> + |1...1>) / sqrt(2)`.
pub fn cat_state(n_system: usize) -> DVector<C64> {
    let dim = 1usize << n_system;
    let mut psi = DVector::zeros(dim);
    let amp = c(1.0 / libm::sqrt(2.0), 0.0);
    psi[0] = amp;
    psi[dim - 1] = amp;
    psi
}

/// `1 - sqrt(<cat| rho |cat>)` for a system density matrix.
pub fn fidelity_loss(rho_out: &DenseOperator) -> Result<f64> {
    let trace = rho_out.trace();
    if (trace - c(1.0, 0.0)).modulus() > 1e-6 {
        return Err(Error::TraceDeviation { trace: trace.re });
    }
    let psi = cat_state(rho_out.n_qubits());
    let overlap = (psi.adjoint() * rho_out.matrix() * &psi)[(0, 0)].re;
    Ok(1.0 - libm::sqrt(overlap.clamp(0.0, 1.0)))
}

/// `1 - sqrt(1 - q)` without cancellation for small leakage `q`.
fn loss_from_leakage(q: f64) -> f64 {
    let q = q.clamp(0.0, 1.0);
    q / (1.0 + libm::sqrt(1.0 - q))
}

/// Initial joint columns `|0...0> ⊗ |b>` and their weights.
fn initial_columns(n_system: usize, n_bath: usize, state: BathState) -> (DMatrix<C64>, Vec<f64>) {
    let dim = 1usize << (n_system + n_bath);
    let db = 1usize << n_bath;
    match state {
        BathState::MaximallyMixed | BathState::BasisAverage => {
            let mut cols = DMatrix::zeros(dim, db);
            for b in 0..db {
                cols[(b, b)] = c(1.0, 0.0);
            }
            (cols, alloc::vec![1.0 / db as f64; db])
        }
        BathState::PureSample(seed) => {
            let mut rng = random::rng(seed);
            let mut cols = DMatrix::zeros(dim, 1);
            let mut norm = 0.0;
            for b in 0..db {
                let z = c(random::normal(&mut rng), random::normal(&mut rng));
                norm += z.norm_sqr();
                cols[(b, 0)] = z;
            }
            cols /= c(libm::sqrt(norm), 0.0);
            (cols, alloc::vec![1.0])
        }
    }
}

/// Final joint state columns of one benchmark point, with their weights.
pub struct FinalState {
    pub columns: DMatrix<C64>,
    pub weights: Vec<f64>,
    pub n_system: usize,
    pub n_bath: usize,
}

impl FinalState {
    fn block(&self, w: usize) -> DMatrix<C64> {
        let db = 1usize << self.n_bath;
        let ds = 1usize << self.n_system;
        DMatrix::from_fn(ds, db, |s, b| self.columns[(s * db + b, w)])
    }

    /// `Tr_B rho` of the weighted mixture of the columns.
    pub fn reduced_state(&self) -> DenseOperator {
        let ds = 1usize << self.n_system;
        let mut rho = DMatrix::<C64>::zeros(ds, ds);
        for (w, p) in self.weights.iter().enumerate() {
            let m = self.block(w);
            rho += (&m * m.adjoint()) * c(*p, 0.0);
        }
        DenseOperator::from_matrix(rho, self.n_system).expect("square")
    }

    /// Per column: squared norm and squared norm outside the cat-state subspace.
    fn leakage(&self) -> Vec<(f64, f64)> {
        let psi = cat_state(self.n_system);
        (0..self.weights.len())
            .map(|w| {
                let m = self.block(w);
                let coeff = psi.adjoint() * &m;
                let outside = &m - &psi * coeff;
                (
                    m.iter().map(|z| z.norm_sqr()).sum(),
                    outside.iter().map(|z| z.norm_sqr()).sum(),
                )
            })
            .collect()
    }

    /// Fidelity loss computed from amplitudes, accurate for losses far below
    /// machine epsilon relative to one.
    pub fn fidelity_loss(&self, state: BathState) -> Result<f64> {
        let parts = self.leakage();
        let trace: f64 = parts
            .iter()
            .zip(&self.weights)
            .map(|((n, _), p)| p * n)
            .sum();
        if (trace - 1.0).abs() > 1e-9 {
            return Err(Error::TraceDeviation { trace });
        }
        Ok(match state {
            BathState::BasisAverage => parts
                .iter()
                .zip(&self.weights)
                .map(|((n, out), p)| p * loss_from_leakage(out / n))
                .sum(),
            _ => {
                let q: f64 = parts
                    .iter()
                    .zip(&self.weights)
                    .map(|((_, out), p)| p * out)
                    .sum();
                loss_from_leakage(q / trace)
            }
        })
    }
}

/// Runs the cat circuit at one point and returns the final joint columns.
pub fn simulate_point(
    cfg: &BenchConfig,
    a: f64,
    epsilon: f64,
    mode: Mode,
) -> Result<(FinalState, usize)> {
    cfg.validate()?;
    let opts = CompileOptions::new(cfg.n_system, cfg.tau)
        .with_shape(cfg.shape)
        .with_epsilon(epsilon);
    let seq = compile_circuit(&cat_circuit(), mode, &opts)?;
    let em = build_bath_hamiltonian(cfg.n_system, cfg.n_bath, cfg.gamma, a)?;
    let (mut columns, weights) = initial_columns(cfg.n_system, cfg.n_bath, cfg.bath_state);
    propagate_states(&seq, &em, cfg.substeps, &mut columns)?;
    let state = FinalState {
        columns,
        weights,
        n_system: cfg.n_system,
        n_bath: cfg.n_bath,
    };
    Ok((state, seq.slot_count()))
}

/// Fidelity loss of the cat state prepared in `mode` at coupling `a` and amplitude error `epsilon`.
pub fn run_point(cfg: &BenchConfig, a: f64, epsilon: f64, mode: Mode) -> Result<BenchmarkRecord> {
    let (state, slot_count) = simulate_point(cfg, a, epsilon, mode)?;
    let fidelity_loss = state.fidelity_loss(cfg.bath_state)?;
    Ok(BenchmarkRecord {
        a,
        epsilon,
        mode,
        fidelity_loss,
        slot_count,
        wall_time_s: 0.0,
    })
}

/// Every point of the sweep, in output order. Stops at the first failure.
pub fn sweep(cfg: &BenchConfig) -> Result<Vec<BenchmarkRecord>> {
    cfg.validate()?;
    cfg.points()
        .into_iter()
        .map(|(eps, mode, a)| run_point(cfg, a, eps, mode))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::spectral_norm;

    fn small_cfg() -> BenchConfig {
        BenchConfig {
            n_bath: 2,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn default_sweep_has_thirteen_couplings() {
        let cfg = BenchConfig::default();
        assert_eq!(cfg.a_values.len(), 13);
        assert!((cfg.a_values[0] - 0.1).abs() < 1e-15);
        assert!((cfg.a_values[12].log10() + 5.8).abs() < 1e-12);
        assert_eq!(cfg.points().len(), 13 * 3 * 2);
        assert!(a_log10_range(-1.0, -2.0, 0.5).is_err());
    }

    #[test]
    fn points_are_sorted() {
        let cfg = BenchConfig {
            epsilon_values: alloc::vec![1e-2, 0.0],
            ..BenchConfig::default()
        };
        let points = cfg.points();
        assert_eq!(points[0], (0.0, Mode::Primitive, cfg.a_values[0]));
        assert_eq!(points[13].1, Mode::Dcg);
        assert!(points[1].2 < points[0].2);
    }

    #[test]
    fn bath_hamiltonian_terms() {
        let em = build_bath_hamiltonian(3, 5, 1.0, 0.1).unwrap();
        assert_eq!(em.couplings().len(), 45);
        let em = build_bath_hamiltonian(1, 2, 1.0, 0.0).unwrap();
        // sigma.sigma on two spins has eigenvalues 1 (triplet) and -3 (singlet).
        assert!((spectral_norm(em.h_bath()).unwrap() - 3.0).abs() < 1e-12);
        assert!(em.h_e().is_hermitian(1e-14));
    }

    #[test]
    fn heisenberg_bath_commutes_with_total_coupling() {
        let em = build_bath_hamiltonian(1, 3, 1.0, 0.3).unwrap();
        let hb = em.h_bath().embed_bath(1);
        let hsb = em.h_e() - &hb;
        let comm = &(&hb * &hsb) - &(&hsb * &hb);
        assert!(comm.max_abs() < 1e-13);
    }

    #[test]
    fn cat_circuit_prepares_cat_state() {
        let opts = CompileOptions::new(3, 1.0);
        let u = compile_circuit(&cat_circuit(), Mode::Primitive, &opts)
            .unwrap()
            .intended_unitary();
        let out = u.matrix().column(0).into_owned();
        let overlap = (cat_state(3).adjoint() * out)[(0, 0)].modulus();
        assert!((overlap - 1.0).abs() < 1e-12);
        assert_eq!(cat_circuit().len(), 3);
    }

    #[test]
    fn fidelity_loss_examples() {
        let psi = cat_state(3);
        let pure = DenseOperator::projector(&psi, 3).unwrap();
        assert!(fidelity_loss(&pure).unwrap().abs() < 1e-15);
        let mut orth = DVector::zeros(8);
        orth[0] = c(1.0 / 2f64.sqrt(), 0.0);
        orth[7] = c(-1.0 / 2f64.sqrt(), 0.0);
        let rho = DenseOperator::projector(&orth, 3).unwrap();
        assert!((fidelity_loss(&rho).unwrap() - 1.0).abs() < 1e-15);
        let mixed = DenseOperator::identity(3, 0).scale(1.0 / 8.0);
        assert!((fidelity_loss(&mixed).unwrap() - (1.0 - (1.0f64 / 8.0).sqrt())).abs() < 1e-15);
        assert!(fidelity_loss(&DenseOperator::identity(3, 0)).is_err());
    }

    #[test]
    fn ideal_points_are_lossless() {
        let cfg = small_cfg();
        for mode in [Mode::Primitive, Mode::Dcg] {
            let r = run_point(&cfg, 0.0, 0.0, mode).unwrap();
            assert!(r.fidelity_loss <= 1e-9, "{mode:?} {}", r.fidelity_loss);
        }
        let r = run_point(&cfg, 0.0, 0.01, Mode::Primitive).unwrap();
        assert!(r.fidelity_loss > 0.0);
    }

    #[test]
    fn amplitude_loss_matches_density_matrix() {
        for state in [BathState::MaximallyMixed, BathState::PureSample(3)] {
            let cfg = BenchConfig {
                bath_state: state,
                ..small_cfg()
            };
            let (fin, slots) = simulate_point(&cfg, 0.05, 0.0, Mode::Primitive).unwrap();
            assert_eq!(slots, fin_slots(Mode::Primitive));
            let rho = fin.reduced_state();
            assert!((rho.trace() - c(1.0, 0.0)).modulus() < 1e-12);
            let direct = fidelity_loss(&rho).unwrap();
            let amp = fin.fidelity_loss(state).unwrap();
            assert!((direct - amp).abs() < 1e-12, "{direct} {amp}");
        }
    }

    fn fin_slots(mode: Mode) -> usize {
        let opts = CompileOptions::new(3, 1.0);
        compile_circuit(&cat_circuit(), mode, &opts)
            .unwrap()
            .slot_count()
    }

    #[test]
    fn basis_average_is_not_below_mixture_loss() {
        // 1 - sqrt(F) is convex in F, so the mean loss is at least the loss of the mean state.
        let cfg = small_cfg();
        let (fin, _) = simulate_point(&cfg, 0.05, 0.0, Mode::Primitive).unwrap();
        let mixed = fin.fidelity_loss(BathState::MaximallyMixed).unwrap();
        let avg = fin.fidelity_loss(BathState::BasisAverage).unwrap();
        assert!(avg >= mixed - 1e-15);
    }

    #[test]
    fn sorting_records() {
        let rec = |epsilon, mode, a| BenchmarkRecord {
            a,
            epsilon,
            mode,
            fidelity_loss: 0.0,
            slot_count: 0,
            wall_time_s: 0.0,
        };
        let mut v = alloc::vec![
            rec(1e-3, Mode::Primitive, 0.1),
            rec(0.0, Mode::Dcg, 0.1),
            rec(0.0, Mode::Dcg, 0.5),
            rec(0.0, Mode::Primitive, 1e-3)
        ];
        sort_records(&mut v);
        assert_eq!(v[0].mode, Mode::Primitive);
        assert_eq!((v[1].a, v[2].a), (0.5, 0.1));
        assert_eq!(v[3].epsilon, 1e-3);
    }
}
