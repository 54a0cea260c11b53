//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("subspace dimension for {modes} modes and {photons} photons exceeds the exact integer range")]
    DimensionOverflow { modes: usize, photons: usize },
    #[error("occupation vector has {got} modes, expected {expected}")]
    ModeMismatch { expected: usize, got: usize },
    #[error("occupation vector totals {got} photons, expected {expected}")]
    PhotonMismatch { expected: usize, got: usize },
    #[error("occupation vector is not a member of the basis")]
    NotInBasis,
    #[error("angular-momentum relabelling requires exactly 2 modes, got {0}")]
    NotTwoModes(usize),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has dimension {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian: deviation {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("matrix is not unitary: deviation {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { defect: f64, tol: f64 },
    #[error("state vector has {got} amplitudes, basis dimension is {expected}")]
    AmplitudeCount { expected: usize, got: usize },
    #[error("subspace dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("photon number {photons} exceeds the oracle cap {cap}")]
    OracleCap { photons: usize, cap: usize },
    #[error("qubit count {qubits} exceeds the configured cap {cap}")]
    QubitCap { qubits: usize, cap: usize },
    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },
    #[error("beam splitter modes ({0}, {1}) must be distinct and ordered")]
    BadModePair(usize, usize),
    #[error("invalid netlist: {0}")]
    InvalidNetlist(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("logical state index {index} out of range for {qubits} qubits")]
    StateIndexRange { index: usize, qubits: usize },
    #[error("occupation vector does not encode a logical state (total {0} != 1)")]
    NonEncoding(usize),
    #[error("mode count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("eigendecomposition failed to converge")]
    EigenConvergence,
    #[error("elimination residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    DecompositionResidual { residual: f64, tol: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}
