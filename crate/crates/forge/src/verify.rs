//! Invariant suites behind `dcg-forge verify`.

use std::f64::consts::PI;
use std::fmt;

use dcg_core::compile::{
    compile_dcg, compile_noop, compile_primitive, CompileOptions, PrimitiveGate,
};
use dcg_core::dynamics::{first_order_phase, ErrorModel};
use dcg_core::euler::{cayley_graph, dd_group_z2z2, decoupling_residual, modify_graph_for_gate};
use dcg_core::operator::{expm_unitary, hermitian_log, mod_bath, spectral_norm};
use dcg_core::pulses::{seq_h1, seq_h2, validate, ControlLimits, Generator, PulseShape};
use dcg_core::random::{self, Rng};
use dcg_core::{DenseOperator, Pauli, PauliString, Result};

use crate::epg_sweep::{loglog_slope, sweep as epg_sweep, EpgSetup};
use crate::gate_spec::GateSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn coupled(rng: &mut Rng, s: &PauliString, n_bath: usize) -> DenseOperator {
    DenseOperator::system_bath(&s.to_operator(0), &random::hermitian(rng, 0, n_bath, 1.0))
}

fn random_rotation(rng: &mut Rng, n: usize) -> PrimitiveGate {
    let theta = random::uniform(rng, 0.05, PI - 0.05);
    let generator = match (rng_index(rng, 3), n) {
        (0, _) => Generator::x(rng_index(rng, n)),
        (1, _) | (_, 1) => Generator::y(rng_index(rng, n)),
        _ => Generator::zz(0, 1 + rng_index(rng, n - 1)),
    };
    PrimitiveGate::new(generator, theta).folded()
}

fn rng_index(rng: &mut Rng, n: usize) -> usize {
    (random::uniform(rng, 0.0, n as f64) as usize).min(n - 1)
}

/// Single-qubit and inhomogeneous two-qubit errors are averaged away by the
/// collective Pauli group; homogeneous two-qubit errors are not.
pub fn decoupling(seed: u64) -> Result<Check> {
    let mut rng = random::rng(seed);
    let rep = dd_group_z2z2(3)?;
    let axes = [Pauli::X, Pauli::Y, Pauli::Z];
    let mut worst_linear: f64 = 0.0;
    for q in 0..3 {
        for a in axes {
            let e = coupled(&mut rng, &PauliString::single(3, q, a)?, 1);
            worst_linear = worst_linear.max(decoupling_residual(&rep, &e)?);
        }
    }
    let mut worst_inhom: f64 = 0.0;
    let mut least_hom = f64::INFINITY;
    for k in 0..20 {
        let (i, j) = [(0, 1), (0, 2), (1, 2)][k % 3];
        let (a, b) = (axes[k % 3], axes[(k + 1 + k / 3 % 2) % 3]);
        let mut f = vec![Pauli::I; 3];
        f[i] = a;
        f[j] = b;
        worst_inhom = worst_inhom.max(decoupling_residual(
            &rep,
            &coupled(&mut rng, &PauliString::new(f.clone()), 1),
        )?);
        f[j] = a;
        least_hom = least_hom.min(decoupling_residual(
            &rep,
            &coupled(&mut rng, &PauliString::new(f), 1),
        )?);
    }
    let passed = worst_linear <= 1e-12 && worst_inhom <= 1e-12 && least_hom >= 1.0;
    Ok(check(
        "decoupling",
        passed,
        format!("single-qubit {worst_linear:.1e}, inhomogeneous {worst_inhom:.1e}, homogeneous min {least_hom:.3}"),
    ))
}

/// Slot counts and Cayley graph sizes.
pub fn structure() -> Result<Check> {
    let opts = CompileOptions::new(3, 1.0);
    let noop = compile_noop(&opts)?.slot_count();
    let dcg = compile_dcg(PrimitiveGate::new(Generator::x(1), 0.3), &opts)?.slot_count();
    let graph = modify_graph_for_gate(&cayley_graph(&dd_group_z2z2(3)?))?;
    let (v, e) = (graph.n_vertices(), graph.edges().len());
    let passed = noop == 8 && dcg == 16 && v == 5 && e == 12;
    Ok(check(
        "structure",
        passed,
        format!("noop {noop} slots, dcg {dcg} slots, modified graph {v} vertices / {e} edges"),
    ))
}

/// The two gate arms have identical first-order phases.
pub fn equal_error_pair(seed: u64, trials: usize) -> Result<Check> {
    let mut rng = random::rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let em = ErrorModel::random_linear(&mut rng, 2, 1, 1.0, 1.0);
        let theta = random::uniform(&mut rng, 0.05, 1.5);
        for shape in [PulseShape::Rectangular, PulseShape::Triangular] {
            let g = Generator::zz(0, 1);
            let p1 = first_order_phase(&seq_h1(theta, 1.0, g, shape, 2)?, &em)?;
            let p2 = first_order_phase(&seq_h2(theta, 1.0, g, shape, 2)?, &em)?;
            worst = worst.max((&p1 - &p2).max_abs());
        }
    }
    Ok(check(
        "equal-error pair",
        worst <= 1e-10,
        format!("max |phi1 - phi2| = {worst:.1e} over {trials} models"),
    ))
}

/// First-order mod-bath phases of NOOPs and corrected gates vanish, and
/// every compiled sequence respects the control limits.
pub fn cancellation(seed: u64, trials: usize) -> Result<Check> {
    let mut rng = random::rng(seed);
    let opts = CompileOptions::new(3, 1.0);
    let limits = ControlLimits::new(1.0, 2.0);
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    for _ in 0..trials {
        let em = ErrorModel::random_linear(&mut rng, 3, 1, 1.0, 1.0);
        let gate = random_rotation(&mut rng, 3);
        for seq in [compile_noop(&opts)?, compile_dcg(gate, &opts)?] {
            violations += validate(&seq, limits).violations.len();
            worst = worst.max(spectral_norm(
                &mod_bath(&first_order_phase(&seq, &em)?).hermitian_part(),
            )?);
        }
    }
    Ok(check(
        "first-order cancellation",
        worst <= 1e-10 && violations == 0,
        format!("max ||mod_bath(phi1)|| = {worst:.1e}, {violations} limit violations over {trials} trials"),
    ))
}

/// EPG slopes against `tau` for a corrected and a bare ZZ gate.
pub fn epg_scaling() -> Result<Check> {
    let taus: Vec<f64> = (4..=10).map(|k| 2f64.powi(-k)).collect();
    let gate = GateSpec::Gate(dcg_core::compile::Gate::Primitive(PrimitiveGate::new(
        Generator::zz(0, 1),
        PI / 4.0,
    )));
    let setup = EpgSetup::new(2);
    let slope = |mode| -> Result<f64> {
        let rows = epg_sweep(&gate, mode, &taus, &setup)?;
        Ok(loglog_slope(
            &taus,
            &rows.iter().map(|r| r.epg_exact).collect::<Vec<_>>(),
        ))
    };
    let dcg = slope(dcg_core::compile::Mode::Dcg)?;
    let primitive = slope(dcg_core::compile::Mode::Primitive)?;
    let passed = (1.8..=2.2).contains(&dcg) && (0.9..=1.1).contains(&primitive);
    Ok(check(
        "epg scaling",
        passed,
        format!("slope dcg {dcg:.3}, primitive {primitive:.3}"),
    ))
}

/// Exponential unitarity and logarithm round trip on random Hermitian inputs.
pub fn operators(seed: u64, trials: usize) -> Result<Check> {
    let mut rng = random::rng(seed);
    let mut unitarity: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    for _ in 0..trials {
        let norm = random::uniform(&mut rng, 0.1, 3.0);
        let h = random::hermitian(&mut rng, 2, 1, norm);
        unitarity = unitarity.max(expm_unitary(&h, 1.0)?.unitary_deviation());
        round_trip = round_trip.max(hermitian_log(&expm_unitary(&h, 1.0)?)?.max_abs_diff(&h));
    }
    let passed = unitarity <= 1e-10 && round_trip <= 1e-10;
    Ok(check(
        "operators",
        passed,
        format!("unitarity {unitarity:.1e}, log round trip {round_trip:.1e}"),
    ))
}

/// Sanity check that a bare pulse leaves a first-order error the corrected one removes.
pub fn primitive_baseline(seed: u64) -> Result<Check> {
    let mut rng = random::rng(seed);
    let em = ErrorModel::random_linear(&mut rng, 2, 1, 1.0, 1.0);
    let seq = compile_primitive(
        PrimitiveGate::new(Generator::x(0), 0.7),
        &CompileOptions::new(2, 1.0),
    )?;
    let norm = spectral_norm(&mod_bath(&first_order_phase(&seq, &em)?).hermitian_part())?;
    Ok(check(
        "primitive baseline",
        norm > 1e-3,
        format!("||mod_bath(phi1)|| = {norm:.3e}"),
    ))
}

/// All suites in a fixed order.
pub fn run_all(seed: u64) -> Result<Vec<Check>> {
    Ok(vec![
        operators(seed, 20)?,
        decoupling(seed)?,
        structure()?,
        equal_error_pair(seed, 50)?,
        cancellation(seed, 100)?,
        primitive_baseline(seed)?,
        epg_scaling()?,
    ])
}
