//! Crate error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("galois exponent {d} is not coprime to cyclotomic order {order}")]
    NotCoprime { d: i64, order: u64 },

    #[error("modulus {n} exceeds enumeration bound {bound}")]
    EnumerationBound { n: u64, bound: u64 },

    #[error("requested precision {requested} exceeds known truncation {known}")]
    PrecisionExceeded { requested: String, known: String },

    #[error("leading coefficient {coeff} is not a root of unity times a positive rational with an exact {p}-th root")]
    LeadingCoefficientShape { coeff: String, p: u32 },

    #[error("multiplier snapping failure: raw numeric ratio {re}+{im}i is not within {tol} of a root of unity of order dividing {order}")]
    SnapFailure { re: f64, im: f64, tol: f64, order: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    /// Process exit code for the CLI: 2 for precondition failures, 3 for
    /// internal inconsistencies, 2 for everything else user-correctable.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistency(_) | Error::SnapFailure { .. } => 3,
            _ => 2,
        }
    }
}
