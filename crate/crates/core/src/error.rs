use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("no value supplied for variable {0}")]
    UnboundVariable(String),

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),

    #[error("matrix is not upper triangular: entry ({row},{col}) is nonzero")]
    NotTriangular { row: usize, col: usize },

    #[error("inexact division at entry ({row},{col}): {detail}")]
    InexactDivision {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("form degree {0} outside the supported range 2..=64")]
    DegreeOutOfRange(usize),

    #[error("degree {found} given, at least {min} required")]
    DegreeTooSmall { min: usize, found: usize },

    #[error("degree {found} given, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("a form of degree {degree} needs {expected} coefficients, got {found}")]
    CoefficientCount {
        degree: usize,
        expected: usize,
        found: usize,
    },

    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("degenerate form: {0}")]
    DegenerateForm(String),

    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(BigInt),

    #[error("elements belong to different orders")]
    ContextMismatch,

    #[error("{expected} coordinates expected, got {found}")]
    CoordinateCount { expected: usize, found: usize },

    #[error("element has norm zero and is not invertible")]
    ZeroNorm,

    #[error("multiplication table is not associative at (phi{0}*phi{1})*phi{2}")]
    NotAssociative(usize, usize, usize),

    #[error("table is not a cubic ring: {0}")]
    NotCubicRing(String),

    #[error("malformed multiplication table: {0}")]
    Table(String),

    #[error("covariant derivation failed: {0}")]
    Covariant(String),
}

impl Error {
    /// Stable snake_case name of the variant, for structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::UnboundVariable(_) => "unbound_variable",
            Error::Shape(_) => "shape",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare(..) => "not_square",
            Error::NotTriangular { .. } => "not_triangular",
            Error::InexactDivision { .. } => "inexact_division",
            Error::DegreeOutOfRange(_) => "degree_out_of_range",
            Error::DegreeTooSmall { .. } => "degree_too_small",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::CoefficientCount { .. } => "coefficient_count",
            Error::ZeroLeadingCoefficient => "zero_leading_coefficient",
            Error::DegenerateForm(_) => "degenerate_form",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::ContextMismatch => "context_mismatch",
            Error::CoordinateCount { .. } => "coordinate_count",
            Error::ZeroNorm => "zero_norm",
            Error::NotAssociative(..) => "not_associative",
            Error::NotCubicRing(_) => "not_cubic_ring",
            Error::Table(_) => "table",
            Error::Covariant(_) => "covariant",
        }
    }
}
