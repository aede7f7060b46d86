//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// `infinity - infinity` has no extended-real value.
    #[error("indeterminate extended-real arithmetic: infinity minus infinity")]
    IndeterminateInfinity,

    /// An operation required a finite value but received infinity.
    #[error("operation requires a finite value, got infinity")]
    NotFinite,

    #[error("slope parameter a = {0} outside [0, 1]")]
    SlopeOutOfRange(f64),

    /// Operation defined only for interior slopes `0 < a < 1`.
    #[error("operation undefined at boundary slope a = {0}; use the a in {{0,1}} closed forms")]
    BoundarySlope(f64),

    #[error("non-finite number in input: {0}")]
    NonFiniteNumber(f64),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("complex is not closed under faces: simplex {0} misses a facet")]
    NotFaceClosed(usize),

    #[error("duplicate simplex at index {0}")]
    DuplicateSimplex(usize),

    #[error("complexes have mismatched structure: {0}")]
    StructureMismatch(String),

    #[error("degenerate generator parameter: {0}")]
    DegenerateParameter(String),

    /// A polyline segment lies exactly on the filtering line, so the
    /// intersection is a whole segment instead of a point.
    #[error("degenerate intersection: contour segment lies on the filtering line")]
    AmbiguousIntersection,

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid estimator configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: parse error: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
