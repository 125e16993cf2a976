use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library, one variant per rejected precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot take the integer square root of negative number {0}")]
    NegativeSqrt(BigInt),

    #[error("quadratic numbers over different radicands: {0} and {1}")]
    RadicandMismatch(u64, u64),

    #[error("radicand {0} must be a positive non-square integer")]
    InvalidRadicand(u64),

    #[error("invalid fraction literal {0:?}")]
    InvalidFraction(String),

    #[error("exponent vector has length {found}, ambient ring has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ideal power must be at least 1, got {0}")]
    ZeroPower(u32),

    #[error("variable index {index} out of range for {dim} variables")]
    VariableOutOfRange { index: usize, dim: usize },

    #[error("ideal is not contained in the comparison ideal (generator {0} is missing)")]
    NotContained(String),

    #[error(
        "ambient dimension d = {0} is too small: the length of H^0_m(R/I^n) is only computed \
         under the depth hypothesis depth R >= 2, which needs d >= 2"
    )]
    DepthHypothesis(usize),

    #[error("{what} needs at least {needed} terms, got {got}")]
    TooShort { what: &'static str, needed: usize, got: usize },

    #[error("ideal is not m-primary (its saturation is not the unit ideal)")]
    NotMPrimary,

    #[error("finite differences of order {degree} did not stabilize within n <= {n_max}")]
    NotStabilized { degree: usize, n_max: usize },

    #[error("invalid K3 parameters (a,b,c,e) = ({a},{b},{c},{e}): {reason}")]
    InvalidK3Params { a: i64, b: i64, c: i64, e: i64, reason: String },

    #[error(
        "closed form limit is only established for a = 4 (got a = {a}); the two printed \
         readings of the lambda^2 coefficient give {variant_linear} (coefficient (4-a)/2) \
         and {variant_square} (coefficient (4-a)^2/2)"
    )]
    UnsupportedCurveDegree { a: i64, variant_linear: String, variant_square: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag for the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeSqrt(_) => "negative_sqrt",
            Error::RadicandMismatch(..) => "radicand_mismatch",
            Error::InvalidRadicand(_) => "invalid_radicand",
            Error::InvalidFraction(_) => "invalid_fraction",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroPower(_) => "zero_power",
            Error::VariableOutOfRange { .. } => "variable_out_of_range",
            Error::NotContained(_) => "not_contained",
            Error::DepthHypothesis(_) => "depth_hypothesis",
            Error::TooShort { .. } => "sequence_too_short",
            Error::NotMPrimary => "not_m_primary",
            Error::NotStabilized { .. } => "not_stabilized",
            Error::InvalidK3Params { .. } => "invalid_k3_params",
            Error::UnsupportedCurveDegree { .. } => "unsupported_curve_degree",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownVariable(String),
    MalformedExponent,
    EmptyTerm,
    UnexpectedChar(char),
    DuplicateVariable(String),
    InvalidVariableName(String),
}

/// Parse failure with a 1-based character position into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at position {position}", describe(&self.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::UnknownVariable(v) => format!("unknown variable {v}"),
        ParseErrorKind::MalformedExponent => "malformed exponent".to_string(),
        ParseErrorKind::EmptyTerm => "empty term".to_string(),
        ParseErrorKind::UnexpectedChar(c) => format!("unexpected character {c:?}"),
        ParseErrorKind::DuplicateVariable(v) => format!("duplicate variable {v}"),
        ParseErrorKind::InvalidVariableName(v) => format!("invalid variable name {v:?}"),
    }
}
