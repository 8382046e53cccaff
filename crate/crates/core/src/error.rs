use alloc::string::String;
use core::fmt;

use crate::universe::MultiDegree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    UniverseMismatch,
    RingMismatch,
    UnknownVariable(String),
    InvalidVariableName(String),
    DuplicateVariable(String),
    TooManyVariables(usize),
    InvalidGrouping(String),
    /// The zero polynomial has no multidegree.
    ZeroPolynomial,
    NotHomogeneous {
        first_term: String,
        first_degree: MultiDegree,
        second_term: String,
        second_degree: MultiDegree,
    },
    ExponentOverflow,
    PointLength { expected: usize, found: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::UniverseMismatch => f.write_str("polynomials live in different variable universes"),
            PolyError::RingMismatch => f.write_str("polynomials have different coefficient rings"),
            PolyError::UnknownVariable(n) => write!(f, "unknown variable `{n}`"),
            PolyError::InvalidVariableName(n) => write!(f, "invalid variable name `{n}`"),
            PolyError::DuplicateVariable(n) => write!(f, "variable `{n}` listed twice"),
            PolyError::TooManyVariables(n) => {
                write!(f, "{n} variables exceed the limit of {}", crate::universe::MAX_VARS)
            }
            PolyError::InvalidGrouping(why) => write!(f, "invalid variable grouping: {why}"),
            PolyError::ZeroPolynomial => f.write_str("the zero polynomial has no multidegree"),
            PolyError::NotHomogeneous { first_term, first_degree, second_term, second_degree } => write!(
                f,
                "not multi-homogeneous: term `{first_term}` has degree {first_degree} but `{second_term}` has degree {second_degree}"
            ),
            PolyError::ExponentOverflow => f.write_str("exponent overflow"),
            PolyError::PointLength { expected, found } => {
                write!(f, "point has {found} coordinates, universe has {expected}")
            }
        }
    }
}

impl core::error::Error for PolyError {}
