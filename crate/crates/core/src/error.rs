use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: usize, right: usize },

    #[error("the zero element has no inverse")]
    ZeroElement,

    #[error("exponent {exponent} is not a unit modulo {conductor}")]
    NotCoprime { exponent: i64, conductor: usize },

    #[error("requested precision of {0} digits is below the minimum of 16")]
    PrecisionTooLow(u32),

    #[error("subgroup <g^{power}> of order {order} is inconsistent with the Galois group: {reason}")]
    InconsistentSubgroup {
        power: usize,
        order: usize,
        reason: String,
    },

    #[error("element is not real at conjugate {exponent}: imaginary part {imag} exceeds tolerance")]
    NotReal { exponent: usize, imag: String },

    #[error("no prime p = 1 (mod {n}) below the search bound {bound}")]
    SearchBoundExceeded { n: u64, bound: u64 },

    #[error("enumeration needs {needed} evaluations, above the work cap of {cap}")]
    WorkCapExceeded { needed: u128, cap: u128 },

    #[error("distance report is {status}, an exact value is required")]
    NotExact { status: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ConductorMismatch { .. } => "conductor_mismatch",
            Error::ZeroElement => "zero_element",
            Error::NotCoprime { .. } => "not_coprime",
            Error::PrecisionTooLow(_) => "precision_too_low",
            Error::InconsistentSubgroup { .. } => "inconsistent_subgroup",
            Error::NotReal { .. } => "not_real",
            Error::SearchBoundExceeded { .. } => "search_bound_exceeded",
            Error::WorkCapExceeded { .. } => "work_cap_exceeded",
            Error::NotExact { .. } => "not_exact",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
