use thiserror::Error;

/// Errors raised by the simulator, the trainer and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("the set of kept qubits is empty")]
    EmptyKeepSet,

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("layer {layer}, perceptron {perceptron} does not exist")]
    IndexOutOfRange { layer: usize, perceptron: usize },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid hyperparameters: {0}")]
    InvalidHyperparams(String),

    #[error("no supervised vertices: supervised loss is undefined")]
    NoSupervisedVertices,

    #[error("every vertex is supervised: testing loss is undefined")]
    NoTestVertices,

    #[error("no training signal: no supervised vertices and graph weight is zero")]
    NoTrainingSignal,

    #[error("numerical invariant violated: {0}")]
    Numerical(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("serialization error: {0}")]
    Serialization(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
