use thiserror::Error;

use crate::hypergraph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("edge {edge:?} has {len} vertices, expected {expected}")]
    NonUniformEdge {
        edge: Vec<VertexId>,
        len: usize,
        expected: usize,
    },
    #[error("edge {0:?} repeats a vertex")]
    DuplicateVertexInEdge(Vec<VertexId>),
    #[error("edge {0:?} appears more than once")]
    DuplicateEdge(Vec<VertexId>),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexIdOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {0:?} is not present")]
    EdgeNotPresent(Vec<VertexId>),
    #[error("operation leaves no vertices")]
    EmptyResult,
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("{what} exceeds the cap of {cap} (got {got})")]
    TooLarge {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("hypergraph has isolated vertex {0}")]
    IsolatedVertex(VertexId),
    #[error("hypergraph is not connected")]
    NotConnected,

    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("eigenvalue is zero")]
    ZeroEigenvalue,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("root-of-unity relation violated between vertices {a} and {b} (deviation {deviation:.3e})")]
    RelationViolated {
        a: VertexId,
        b: VertexId,
        deviation: f64,
    },

    #[error("root base is zero")]
    ZeroBase,
    #[error("iteration did not converge after {0} steps")]
    IterationDiverged(usize),
    #[error("integer overflow while forming the characteristic polynomial")]
    Overflow,
    #[error("operation requires uniformity 2, got {0}")]
    NotAGraph(usize),

    #[error("no spectrum available for {r}-uniform subgraph {subgraph}")]
    UnsupportedBaseRank { r: usize, subgraph: String },
    #[error("zero is not a valid query; only nonzero eigenvalues are characterized")]
    ZeroEigenvalueQuery,
    #[error("no consistent root choice for the lift within {0} combinations")]
    LiftSearchExhausted(usize),
    #[error("no consistent root choice for the descent within {0} combinations")]
    DescentSearchExhausted(usize),
    #[error("hypergraph carries no provenance tags")]
    MissingProvenance,

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("property {property} failed (seed {seed}, trial {trial}): {detail}\ninstance:\n{instance}")]
    CheckFailed {
        property: String,
        seed: u64,
        trial: usize,
        detail: String,
        instance: String,
    },
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numerical,
    SizeCap,
    Other,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidUniformity(_)
            | NonUniformEdge { .. }
            | DuplicateVertexInEdge(_)
            | DuplicateEdge(_)
            | VertexIdOutOfRange { .. }
            | EdgeNotPresent(_)
            | EmptyResult
            | InvalidOrder(_)
            | IsolatedVertex(_)
            | NotConnected
            | DimensionMismatch { .. }
            | ZeroVector
            | ZeroEigenvalue
            | PreconditionViolated(_)
            | ZeroBase
            | NotAGraph(_)
            | UnsupportedBaseRank { .. }
            | ZeroEigenvalueQuery
            | MissingProvenance
            | Parse { .. }
            | Validation(_)
            | EmptySpectrum => ErrorClass::Validation,
            NonFinite(_)
            | ResidualTooLarge { .. }
            | RelationViolated { .. }
            | IterationDiverged(_)
            | Overflow
            | LiftSearchExhausted(_)
            | DescentSearchExhausted(_) => ErrorClass::Numerical,
            TooLarge { .. } => ErrorClass::SizeCap,
            Io(_) | CheckFailed { .. } => ErrorClass::Other,
        }
    }

    /// Exit code: 2 validation, 3 numerical, 4 size cap, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Validation => 2,
            ErrorClass::Numerical => 3,
            ErrorClass::SizeCap => 4,
            ErrorClass::Other => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
