use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PauliError {
    #[error("pauli string length mismatch: expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid pauli label {ch:?} at position {position}")]
    InvalidCharacter { ch: char, position: usize },
    #[error("term {index} has non-finite coefficient {value}")]
    NonFiniteCoefficient { index: usize, value: f64 },
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("{n_qubits} qubits exceeds the limit of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },
    #[error("register must hold at least one qubit")]
    EmptyRegister,
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),
}

#[derive(Debug, Error)]
pub enum HamiltonianFileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("hamiltonian file violates the schema: {0}")]
    Schema(#[source] serde_json::Error),
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
    #[error("invalid n_qubits {0}")]
    InvalidQubitCount(usize),
    #[error("term {index} has non-finite coefficient {value}")]
    NonFiniteCoefficient { index: usize, value: f64 },
    #[error("term {index}: pauli string has {found} labels, file declares {expected} qubits")]
    StringLength { index: usize, expected: usize, found: usize },
    #[error("term {index}: {source}")]
    BadString {
        index: usize,
        #[source]
        source: PauliError,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulatorError {
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    SameQubit(usize),
    #[error("qubit count mismatch: state has {state}, operand has {other}")]
    QubitCountMismatch { state: usize, other: usize },
    #[error("amplitude vector of length {0} is not a power of two")]
    BadDimension(usize),
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("matrix is not unitary (max |U'U - I| = {0:e})")]
    NotUnitary(f64),
    #[error("{n_qubits} qubits exceeds the simulator limit of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("entangling power needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("unknown entangler family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnsatzError {
    #[error("ansatz needs at least {min} {what}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("parameter vector has length {got}, ansatz expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parameter {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("descriptor is inconsistent with its construction inputs: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error)]
pub enum ExactError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("requested {k} eigenvalues of a {dim}-dimensional operator")]
    BadCount { k: usize, dim: usize },
    #[error("operator is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("eigenpair {index} failed the residual check ({residual:e})")]
    Residual { index: usize, residual: f64 },
    #[error("length mismatch: {vqe} VQE energies vs {exact} reference eigenvalues")]
    LengthMismatch { vqe: usize, exact: usize },
}

#[derive(Debug, Error)]
pub enum SsvqeError {
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
    #[error(transparent)]
    Ansatz(#[from] AnsatzError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error("invalid optimizer config: {0}")]
    InvalidConfig(String),
    #[error("cost became non-finite ({value}) at step {step}")]
    NonFiniteCost { step: usize, value: f64 },
    #[error("all {0} samples failed; first failure: {1}")]
    AllSamplesFailed(usize, String),
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}
