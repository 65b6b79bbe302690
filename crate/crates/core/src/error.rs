use thiserror::Error;

/// Errors raised by the operator algebra, compiler and simulators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n_qubits} qubit(s)")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("operator is not Hermitian (max |A - A^dag| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max |U^dag U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("eigenphase {phase} lies within the branch guard of +/-pi; shorten the interval")]
    BranchGuard { phase: f64 },

    #[error("segment {index}: duration {duration} is below the minimum switching time {tau_min}")]
    DurationTooShort {
        index: usize,
        duration: f64,
        tau_min: f64,
    },

    #[error("segment {index}: realized amplitude {amplitude} exceeds the bound {h_max}")]
    AmplitudeTooLarge {
        index: usize,
        amplitude: f64,
        h_max: f64,
    },

    #[error("graph has no Eulerian cycle: {0}")]
    NoEulerianCycle(&'static str),

    #[error("graph has no Eulerian path: {0}")]
    NoEulerianPath(&'static str),

    #[error("state trace {trace} deviates from one")]
    TraceDeviation { trace: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
