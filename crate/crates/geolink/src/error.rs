use std::fmt;

/// Errors shared by all calculi in this crate.
///
/// The variant name is part of the public contract: the CLI prints it
/// verbatim, so callers can match on it textually.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input value is degenerate for the requested operation
    /// (zero vector, non-primitive vector, boundary-orbit code, ...).
    DegenerateInput(String),
    /// A collection of slopes was empty where at least one is required.
    EmptyCollection,
    /// The operation is only defined for null-homologous collections.
    HomologyError,
    /// Matrix/vector dimensions do not match.
    ShapeError {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// The operation is not defined for these orbifold parameters.
    UnsupportedParams(String),
    /// A turning exponent exceeds what a geodesic can realize.
    NotGeodesic(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInput(msg) => write!(f, "DegenerateInput: {msg}"),
            Error::EmptyCollection => write!(f, "EmptyCollection: no slopes given"),
            Error::HomologyError => {
                write!(f, "HomologyError: collection is not null-homologous")
            }
            Error::ShapeError { expected, got } => write!(
                f,
                "ShapeError: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::UnsupportedParams(msg) => write!(f, "UnsupportedParams: {msg}"),
            Error::NotGeodesic(msg) => write!(f, "NotGeodesic: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
