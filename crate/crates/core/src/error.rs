use thiserror::Error;

/// Errors raised by the library.
///
/// Variables and positions are reported 1-based, matching the input format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the constant monomial 1 cannot be an ideal generator (the quotient ring would be zero)")]
    ConstantGenerator,

    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("exponent {value} at position {position} must be at least 1")]
    NonPositiveExponent { position: usize, value: i64 },

    #[error("ideal is not square-free")]
    NotSquareFree,

    #[error("{found} variables requested, at most {max} are supported")]
    TooManyVariables { found: usize, max: usize },

    #[error("{face} is not a face of the Stanley-Reisner complex")]
    NotAFace { face: String },

    #[error("expected dim S/I = {expected}, found {found}")]
    DimensionMismatch { expected: i64, found: i64 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("theorem violation: {check} failed at {location}")]
    TheoremViolation { check: String, location: String },

    #[error("seed ideal is not generalized Cohen-Macaulay")]
    SeedNotGeneralizedCM,

    #[error("invalid field `{0}`: expected `q` or `gf:<prime>`")]
    InvalidField(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: variable index x{index} out of range 1..={n}")]
    IndexOutOfRange { line: usize, index: usize, n: usize },

    #[error("line {line}: zero exponent in `{factor}`")]
    ZeroExponent { line: usize, factor: String },
}

impl Error {
    /// True for errors that signal an internal inconsistency rather than bad input.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation { .. })
    }

    pub(crate) fn violation(check: impl Into<String>, location: impl Into<String>) -> Self {
        Error::TheoremViolation {
            check: check.into(),
            location: location.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_violations_are_internal() {
        assert!(Error::violation("a", "b").is_theorem_violation());
        assert!(!Error::ConstantGenerator.is_theorem_violation());
        assert!(!Error::PreconditionViolation("x".into()).is_theorem_violation());
        assert!(Error::violation("bound", "i=1").to_string().contains("bound"));
    }
}
