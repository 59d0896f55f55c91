use thiserror::Error;

/// Errors produced by the simulation and verification layers.
///
/// Parse and validation failures for the protocol language have their own
/// richer types in [`crate::dsl`] and convert into [`Error`] at the boundary.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("family of states is not orthonormal (max Gram deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("qubit index {index} out of range for {total} qubits")]
    QubitIndex { index: usize, total: usize },

    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),

    #[error("{actor} does not own qubit {qubit}")]
    Ownership { actor: &'static str, qubit: usize },

    #[error("gate conditioned on a message bit outside Alice's rounds")]
    ConditionByBob,

    #[error("message bit index {index} out of range for {n} message bits")]
    MessageBit { index: usize, n: usize },

    #[error("input has {got} bits, protocol expects {expected}")]
    InputLength { got: usize, expected: usize },

    #[error("random unitary size {requested} qubits exceeds cap of {cap}")]
    RandomUnitaryCap { requested: usize, cap: usize },

    #[error("qubit cap exceeded: {used} live qubits, cap {cap}")]
    CapExceeded { used: usize, cap: usize },

    #[error("schmidt coefficients invalid: {0}")]
    SchmidtCoefficients(String),

    #[error("protocol invalid: {0}")]
    Protocol(String),

    #[error("certificate unsupported: {0}")]
    Certificate(String),

    #[error("encoding scheme invalid: {0}")]
    Scheme(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
