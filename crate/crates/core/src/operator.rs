//! Dense operators on a joint system + bath register.
//!
//! Qubits are ordered with the system register in the leftmost tensor factors
//! and the bath register in the rightmost ones. Qubit 0 is the most
//! significant bit of a basis index.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{ComplexField, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = nalgebra::Complex<f64>;

/// Elementwise tolerance for treating an operator as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Elementwise tolerance for treating an operator as unitary.
pub const UNITARY_TOL: f64 = 1e-10;
/// Minimum distance of an eigenphase from +/-pi accepted by [`hermitian_log`].
pub const BRANCH_GUARD: f64 = 1e-6;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(i * phase)`.
#[inline]
pub(crate) fn cis(phase: f64) -> C64 {
    C64::new(libm::cos(phase), libm::sin(phase))
}

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(ch: char) -> Option<Pauli> {
        match ch.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Whether the operator flips the computational basis bit.
    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Phase picked up by basis state `|bit>`: `P|bit> = phase * |bit ^ flips>`.
    fn phase(self, bit: bool) -> C64 {
        match (self, bit) {
            (Pauli::I, _) | (Pauli::X, _) => c(1.0, 0.0),
            (Pauli::Y, false) => c(0.0, 1.0),
            (Pauli::Y, true) => c(0.0, -1.0),
            (Pauli::Z, false) => c(1.0, 0.0),
            (Pauli::Z, true) => c(-1.0, 0.0),
        }
    }
}

/// Tensor product of single-qubit Paulis, one factor per qubit (qubit 0 first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(factors: Vec<Pauli>) -> Self {
        Self(factors)
    }

    pub fn identity(n: usize) -> Self {
        Self(alloc::vec![Pauli::I; n])
    }

    /// `axis` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, axis: Pauli) -> Result<Self> {
        check_qubit(qubit, n)?;
        let mut s = Self::identity(n);
        s.0[qubit] = axis;
        Ok(s)
    }

    /// The same Pauli on every qubit, e.g. `X^(all)`.
    pub fn uniform(n: usize, axis: Pauli) -> Self {
        Self(alloc::vec![axis; n])
    }

    /// Parses strings such as `"XIZ"`.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(Pauli::from_symbol)
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// All `4^n` strings in lexicographic `I < X < Y < Z` order.
    pub fn all(n: usize) -> Vec<PauliString> {
        let mut out = Vec::with_capacity(1 << (2 * n));
        for code in 0..(1usize << (2 * n)) {
            let factors = (0..n)
                .map(|q| Pauli::ALL[(code >> (2 * (n - 1 - q))) & 3])
                .collect();
            out.push(Self(factors));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.0
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }

    /// Non-identity factors as `(qubit, pauli)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        self.0
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, p)| *p != Pauli::I)
    }

    fn flip_mask(&self) -> usize {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flips())
            .fold(0, |m, (q, _)| m | (1 << (n - 1 - q)))
    }

    /// `P|basis> = phase * |basis ^ mask>` for a basis index of this register.
    fn act(&self, basis: usize) -> (usize, C64) {
        let n = self.0.len();
        let mut phase = c(1.0, 0.0);
        for (q, p) in self.0.iter().enumerate() {
            let bit = (basis >> (n - 1 - q)) & 1 == 1;
            phase *= p.phase(bit);
        }
        (basis ^ self.flip_mask(), phase)
    }

    /// The string as an operator on the system register, tensored with `I` on `n_bath` bath qubits.
    pub fn to_operator(&self, n_bath: usize) -> DenseOperator {
        let n_system = self.0.len();
        let d_bath = 1usize << n_bath;
        let dim = (1usize << n_system) * d_bath;
        let mut mat = DMatrix::zeros(dim, dim);
        for s in 0..(1usize << n_system) {
            let (t, phase) = self.act(s);
            for b in 0..d_bath {
                mat[(t * d_bath + b, s * d_bath + b)] = phase;
            }
        }
        DenseOperator {
            mat,
            n_system,
            n_bath,
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

fn check_qubit(index: usize, n_qubits: usize) -> Result<()> {
    if index < n_qubits {
        Ok(())
    } else {
        Err(Error::QubitOutOfRange { index, n_qubits })
    }
}

/// Complex square matrix on `n_system + n_bath` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    mat: DMatrix<C64>,
    n_system: usize,
    n_bath: usize,
}

impl DenseOperator {
    /// Wraps a square matrix whose leading `n_system` qubits are the system register.
    pub fn from_matrix(mat: DMatrix<C64>, n_system: usize) -> Result<Self> {
        let dim = mat.nrows();
        if mat.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: mat.ncols(),
            });
        }
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_system > n_qubits {
            return Err(Error::QubitOutOfRange {
                index: n_system,
                n_qubits,
            });
        }
        Ok(Self {
            mat,
            n_system,
            n_bath: n_qubits - n_system,
        })
    }

    pub fn zeros(n_system: usize, n_bath: usize) -> Self {
        let dim = 1 << (n_system + n_bath);
        Self {
            mat: DMatrix::zeros(dim, dim),
            n_system,
            n_bath,
        }
    }

    pub fn identity(n_system: usize, n_bath: usize) -> Self {
        let dim = 1 << (n_system + n_bath);
        Self {
            mat: DMatrix::identity(dim, dim),
            n_system,
            n_bath,
        }
    }

    /// Diagonal operator with real entries.
    pub fn from_real_diagonal(diag: &[f64], n_system: usize) -> Result<Self> {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|x| c(*x, 0.0)));
        Self::from_matrix(DMatrix::from_diagonal(&d), n_system)
    }

    /// Projector `|v><v|` for a state vector on `n_system + n_bath` qubits.
    pub fn projector(state: &DVector<C64>, n_system: usize) -> Result<Self> {
        Self::from_matrix(state * state.adjoint(), n_system)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn n_system(&self) -> usize {
        self.n_system
    }

    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    pub fn n_qubits(&self) -> usize {
        self.n_system + self.n_bath
    }

    pub fn system_dim(&self) -> usize {
        1 << self.n_system
    }

    pub fn bath_dim(&self) -> usize {
        1 << self.n_bath
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n_system == other.n_system && self.n_bath == other.n_bath
    }

    pub fn ensure_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    /// Reinterprets the qubit split without touching the entries.
    pub fn with_split(mut self, n_system: usize) -> Result<Self> {
        let n = self.n_qubits();
        if n_system > n {
            return Err(Error::QubitOutOfRange {
                index: n_system,
                n_qubits: n,
            });
        }
        self.n_system = n_system;
        self.n_bath = n - n_system;
        Ok(self)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
            ..*self
        }
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            mat: &self.mat * c(factor, 0.0),
            ..*self
        }
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        Self {
            mat: &self.mat * factor,
            ..*self
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.modulus()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).modulus())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// `max |A - A^dag|` entrywise.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).modulus());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `max |U^dag U - I|` entrywise.
    pub fn unitary_deviation(&self) -> f64 {
        let prod = self.mat.adjoint() * &self.mat;
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((prod[(i, j)] - c(target, 0.0)).modulus());
            }
        }
        dev
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    /// Errors unless Hermitian to a tolerance scaled by the operator's magnitude.
    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation <= HERMITIAN_TOL * self.max_abs().max(1.0) {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }

    /// `(A + A^dag) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let mat = (&self.mat + self.mat.adjoint()) * c(0.5, 0.0);
        Self { mat, ..*self }
    }

    /// `U^dag A U`.
    pub fn conjugate(&self, u: &DenseOperator) -> Self {
        assert_eq!(self.dim(), u.dim(), "operator dimension mismatch");
        Self {
            mat: u.mat.adjoint() * &self.mat * &u.mat,
            ..*self
        }
    }

    /// `(U ⊗ I_B)^dag A (U ⊗ I_B)` for a system-space unitary `U`.
    pub fn conjugate_by_system(&self, u: &DenseOperator) -> Self {
        assert_eq!(
            u.dim(),
            self.system_dim(),
            "system unitary dimension mismatch"
        );
        let joint = u.embed_system(self.n_bath);
        self.conjugate(&joint)
    }

    /// `self ⊗ I` on `n_bath` extra bath qubits; `self` must be a pure system operator.
    pub fn embed_system(&self, n_bath: usize) -> Self {
        debug_assert_eq!(
            self.n_bath, 0,
            "embedding an operator that already has bath qubits"
        );
        if n_bath == 0 {
            return Self {
                mat: self.mat.clone(),
                n_system: self.n_qubits(),
                n_bath: 0,
            };
        }
        let id = DMatrix::<C64>::identity(1 << n_bath, 1 << n_bath);
        Self {
            mat: self.mat.kronecker(&id),
            n_system: self.n_qubits(),
            n_bath,
        }
    }

    /// `I_S ⊗ self` on `n_system` system qubits; `self` is interpreted as a pure bath operator.
    pub fn embed_bath(&self, n_system: usize) -> Self {
        let id = DMatrix::<C64>::identity(1 << n_system, 1 << n_system);
        Self {
            mat: id.kronecker(&self.mat),
            n_system,
            n_bath: self.n_qubits(),
        }
    }

    /// `system ⊗ bath` with the system factor on the left.
    pub fn system_bath(system: &DenseOperator, bath: &DenseOperator) -> Self {
        Self {
            mat: system.mat.kronecker(&bath.mat),
            n_system: system.n_qubits(),
            n_bath: bath.n_qubits(),
        }
    }

    /// Matrix Kronecker product. System qubits of the result are the system
    /// qubits of both factors; this requires `self` to carry no bath qubits
    /// unless `rhs` carries no system qubits.
    pub fn kron(&self, rhs: &DenseOperator) -> Result<Self> {
        if self.n_bath > 0 && rhs.n_system > 0 {
            return Err(Error::InvalidArgument(
                "system qubits must precede bath qubits",
            ));
        }
        Ok(Self {
            mat: self.mat.kronecker(&rhs.mat),
            n_system: self.n_system + rhs.n_system,
            n_bath: self.n_bath + rhs.n_bath,
        })
    }

    /// `Tr_S A`, an operator on the bath register.
    pub fn partial_trace_system(&self) -> Self {
        let ds = self.system_dim();
        let db = self.bath_dim();
        let mat = DMatrix::from_fn(db, db, |b, bp| {
            (0..ds).map(|s| self.mat[(s * db + b, s * db + bp)]).sum()
        });
        Self {
            mat,
            n_system: 0,
            n_bath: self.n_bath,
        }
    }

    /// `Tr_B A`, an operator on the system register.
    pub fn partial_trace_bath(&self) -> Self {
        let ds = self.system_dim();
        let db = self.bath_dim();
        let mat = DMatrix::from_fn(ds, ds, |s, sp| {
            (0..db).map(|b| self.mat[(s * db + b, sp * db + b)]).sum()
        });
        Self {
            mat,
            n_system: self.n_system,
            n_bath: 0,
        }
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        DenseOperator {
            mat: &self.mat + &rhs.mat,
            ..*self
        }
    }
}

impl AddAssign<&DenseOperator> for DenseOperator {
    fn add_assign(&mut self, rhs: &DenseOperator) {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        self.mat += &rhs.mat;
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        DenseOperator {
            mat: &self.mat - &rhs.mat,
            ..*self
        }
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        DenseOperator {
            mat: &self.mat * &rhs.mat,
            ..*self
        }
    }
}

impl Neg for &DenseOperator {
    type Output = DenseOperator;
    fn neg(self) -> DenseOperator {
        DenseOperator {
            mat: -&self.mat,
            ..*self
        }
    }
}

/// `sigma_axis` on `qubit` of an `n_total`-qubit system register.
pub fn embed_pauli(axis: Pauli, qubit: usize, n_total: usize) -> Result<DenseOperator> {
    Ok(PauliString::single(n_total, qubit, axis)?.to_operator(0))
}

// nalgebra's complex symmetric_eigen loses accuracy on near-degenerate
// spectra (reconstruction errors up to 1e-3 at dim 256), so use faer.
fn hermitian_eigen(m: &DMatrix<C64>) -> Result<(DVector<f64>, DMatrix<C64>)> {
    let n = m.nrows();
    let fm = faer::Mat::<C64>::from_fn(n, n, |i, j| m[(i, j)]);
    let eig = fm
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::InvalidArgument("eigendecomposition did not converge"))?;
    let (u, s) = (eig.U(), eig.S());
    let values = DVector::from_fn(n, |i, _| s[i].re);
    let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    Ok((values, vectors))
}

/// Spectral decomposition `H = V diag(values) V^dag` of a Hermitian operator.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    values: DVector<f64>,
    vectors: DMatrix<C64>,
    n_system: usize,
}

impl HermitianEigen {
    pub fn new(h: &DenseOperator) -> Result<Self> {
        h.ensure_hermitian()?;
        let (values, vectors) = hermitian_eigen(&h.hermitian_part().mat)?;
        Ok(Self {
            values,
            vectors,
            n_system: h.n_system,
        })
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<C64> {
        &self.vectors
    }

    /// `V diag(f(values)) V^dag`.
    pub fn map_complex(&self, f: impl Fn(f64) -> C64) -> DenseOperator {
        let mut scaled = self.vectors.clone();
        for (j, lambda) in self.values.iter().enumerate() {
            let w = f(*lambda);
            scaled.column_mut(j).scale_mut_complex(w);
        }
        let mat = scaled * self.vectors.adjoint();
        DenseOperator::from_matrix(mat, self.n_system).expect("square power-of-two matrix")
    }

    /// `exp(-i H t)`.
    pub fn exp_i(&self, t: f64) -> DenseOperator {
        self.map_complex(|lambda| cis(-lambda * t))
    }

    /// Applies `exp(-i H t)` to the columns of `states` in place.
    pub fn evolve(&self, t: f64, states: &mut DMatrix<C64>) {
        let mut rotated = self.vectors.adjoint() * &*states;
        for (i, lambda) in self.values.iter().enumerate() {
            let w = cis(-lambda * t);
            rotated.row_mut(i).iter_mut().for_each(|z| *z *= w);
        }
        *states = &self.vectors * rotated;
    }
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, w: C64);
}

impl<S> ScaleComplex for nalgebra::Matrix<C64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<C64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, w: C64) {
        self.iter_mut().for_each(|z| *z *= w);
    }
}

/// `exp(-i H t)` via Hermitian eigendecomposition. Use [`HermitianEigen`]
/// directly to reuse one decomposition across several durations.
pub fn expm_unitary(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    Ok(HermitianEigen::new(h)?.exp_i(t))
}

/// Hermitian `Phi` with `exp(-i Phi) = V`, eigenphases on the principal branch.
///
/// Works through the Cayley transform `i (I - V)(I + V)^-1`, which is Hermitian
/// and has eigenvalues `-tan(phi/2)`. Eigenphases closer than [`BRANCH_GUARD`]
/// to `+/-pi` are rejected.
pub fn hermitian_log(v: &DenseOperator) -> Result<DenseOperator> {
    let deviation = v.unitary_deviation();
    if deviation > 1e-8 {
        return Err(Error::NotUnitary { deviation });
    }
    let n = v.dim();
    let id = DMatrix::<C64>::identity(n, n);
    let plus = &id + &v.mat;
    let minus = &id - &v.mat;
    let solved = plus.lu().solve(&minus).ok_or(Error::BranchGuard {
        phase: core::f64::consts::PI,
    })?;
    let cayley = solved * c(0.0, 1.0);
    let cayley = DenseOperator {
        mat: (&cayley + cayley.adjoint()) * c(0.5, 0.0),
        ..*v
    };
    let eig = HermitianEigen::new(&cayley)?;
    let limit = core::f64::consts::PI - BRANCH_GUARD;
    for mu in eig.values.iter() {
        let phase = -2.0 * libm::atan(*mu);
        if phase.abs() >= limit {
            return Err(Error::BranchGuard { phase });
        }
    }
    Ok(eig.map_complex(|mu| c(-2.0 * libm::atan(mu), 0.0)))
}

/// `A - I_S ⊗ Tr_S(A) / 2^n_system`: removes pure-bath terms.
pub fn mod_bath(a: &DenseOperator) -> DenseOperator {
    let reduced = a.partial_trace_system().scale(1.0 / a.system_dim() as f64);
    a - &reduced.embed_bath(a.n_system)
}

/// Largest eigenvalue modulus of a Hermitian operator.
pub fn spectral_norm(a: &DenseOperator) -> Result<f64> {
    a.ensure_hermitian()?;
    let (values, _) = hermitian_eigen(&a.hermitian_part().mat)?;
    Ok(values.iter().map(|x| x.abs()).fold(0.0, f64::max))
}

/// Bath operators `B_s = 2^-n Tr_S[(sigma_s ⊗ I) A]` for every system Pauli string `s`,
/// so that `A = sum_s sigma_s ⊗ B_s`.
pub fn pauli_bath_components(a: &DenseOperator) -> BTreeMap<PauliString, DenseOperator> {
    let n = a.n_system;
    let ds = a.system_dim();
    let db = a.bath_dim();
    let norm = 1.0 / ds as f64;
    let mut out = BTreeMap::new();
    for s in PauliString::all(n) {
        // Tr_S[(P ⊗ I) A] = sum_y phase(y) A[(y, b), (y ^ mask, b')] with P|y> = phase(y) |y ^ mask>.
        let mut mat = DMatrix::<C64>::zeros(db, db);
        for y in 0..ds {
            let (x, phase) = s.act(y);
            let w = phase * norm;
            for b in 0..db {
                for bp in 0..db {
                    mat[(b, bp)] += w * a.mat[(y * db + b, x * db + bp)];
                }
            }
        }
        out.insert(
            s,
            DenseOperator {
                mat,
                n_system: 0,
                n_bath: a.n_bath,
            },
        );
    }
    out
}

/// Inverse of [`pauli_bath_components`]: `sum_s sigma_s ⊗ B_s`.
pub fn reconstruct_from_components(
    components: &BTreeMap<PauliString, DenseOperator>,
    n_system: usize,
    n_bath: usize,
) -> DenseOperator {
    let mut total = DenseOperator::zeros(n_system, n_bath);
    for (s, b) in components {
        let term = DenseOperator::system_bath(&s.to_operator(0), b);
        total += &term;
    }
    total
}

/// Reduced system state `Tr_B rho`.
pub fn partial_trace_bath(rho: &DenseOperator) -> DenseOperator {
    rho.partial_trace_bath()
}
