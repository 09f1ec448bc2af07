//! Crate-wide error type. Every fallible operation returns [`Result`].

use alloc::string::String;
use core::fmt;

/// Errors raised by ring construction, arithmetic and reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different rings.
    RingMismatch,
    /// The requested operation needs a field (inverse, gcd, Gaussian step).
    NotAField,
    /// The requested operation needs a certified integral domain.
    NotADomain,
    /// Division by zero or by a non-invertible element.
    DivisionByZero,
    /// Ring constructor rejected its arguments (zero ring, composite "prime", …).
    BadRing(String),
    /// A literal failed to parse; byte offset into the input is included.
    Parse { pos: usize, msg: String },
    /// Operation needs more series coefficients than are available.
    InsufficientPrecision { needed: usize, available: usize },
    /// Ring has n-torsion that the ghost/decimation path cannot cross.
    Torsion(String),
    /// No P/Q with the requested degree bound reproduces the coefficients.
    NoRationalRepresentative { bound: usize },
    /// A reconstruction that is guaranteed by theory failed; indicates a bug.
    ReconstructionInconsistency(String),
    /// Input value violates a documented precondition.
    Domain(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands live in different rings"),
            Error::NotAField => write!(f, "operation requires a field"),
            Error::NotADomain => write!(f, "operation requires a certified integral domain"),
            Error::DivisionByZero => write!(f, "division by zero or non-invertible element"),
            Error::BadRing(m) => write!(f, "invalid ring: {m}"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::InsufficientPrecision { needed, available } => write!(
                f,
                "insufficient precision: need {needed} coefficients, have {available}"
            ),
            Error::Torsion(m) => write!(f, "ring has torsion: {m}"),
            Error::NoRationalRepresentative { bound } => {
                write!(f, "no rational representative within bound {bound}")
            }
            Error::ReconstructionInconsistency(m) => {
                write!(f, "reconstruction inconsistency (internal bug): {m}")
            }
            Error::Domain(m) => write!(f, "{m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
