use std::fmt;

/// A single violated parameter invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Library-wide error type.
#[derive(Debug)]
pub enum Error {
    /// One or more parameter invariants violated; every violation is listed.
    Validation(Vec<Violation>),
    /// Input outside an operation's domain (r <= 0, E >= 0, ...).
    Domain(String),
    /// Attractive inverse-square coupling too strong for this l: the
    /// square root in the level formula turns imaginary.
    Supercritical { l: f64, discriminant: f64 },
    /// Sampling grid is not strictly increasing or otherwise malformed.
    Grid(String),
    /// A closed form lost too much precision to cancellation.
    Numerical(String),
    /// Iterative kernel exceeded its evaluation budget.
    NonConvergence(String),
    /// Mismatched vector lengths.
    Dimension(String),
    /// Embedded reference-table asset failed to parse.
    Asset(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(violations) => {
                write!(f, "invalid parameters: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Supercritical { l, discriminant } => write!(
                f,
                "supercritical inverse-square coupling at l = {l}: (l+1/2)^2 - 2 mu v2 cosh(alpha)/hbar^2 = {discriminant} < 0"
            ),
            Error::Grid(msg) => write!(f, "grid error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::NonConvergence(msg) => write!(f, "did not converge: {msg}"),
            Error::Dimension(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::Asset(msg) => write!(f, "reference table asset: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
