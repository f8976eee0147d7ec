use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid CSR structure: {0}")]
    InvalidCsr(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("row {row}: vertex {vertex} appears more than once")]
    RepeatedVertex { row: usize, vertex: usize },

    #[error("row {row}: index {index} out of range (limit {limit})")]
    IndexOutOfRange { row: usize, index: usize, limit: usize },

    #[error("rows {first} and {second} describe the same simplex")]
    DuplicateSimplex { first: usize, second: usize },

    #[error("degenerate {dim}-simplex (cell {cell})")]
    DegenerateSimplex { dim: usize, cell: usize },

    #[error("(n-1)-cell {cell} has {cofaces} top-dimensional cofaces")]
    NonManifold { cell: usize, cofaces: usize },

    #[error("circumcentric dual violates the Delaunay condition at {dim}-cells {cells:?}")]
    DelaunayViolation { dim: usize, cells: Vec<usize> },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("inconsistent boundary flux: net flux {net:e}")]
    InconsistentFlux { net: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Numerical failures, as opposed to bad input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::NotConverged { .. } | Error::NotPositiveDefinite)
    }
}
