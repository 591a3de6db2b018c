use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot combine a one-variable series with a two-variable series without an embedding")]
    ArityMismatch,

    #[error("coefficient requested at {exponent} but the series is only known through {order}")]
    TruncationExceeded { exponent: String, order: String },

    #[error("cannot raise the zero series to a negative power")]
    ZeroInverse,

    #[error("expected constant term {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("series has a negative exponent where a power series is required")]
    NegativeExponent,

    #[error("expected an integer at {location}, found {value}")]
    NonIntegral { location: String, value: String },

    #[error("expected a nonnegative value at {location}, found {value}")]
    Negative { location: String, value: String },

    #[error("series does not conform: {0}")]
    NonConforming(String),

    #[error("eta quotient has nonzero weight (sum of exponents = {0})")]
    NonzeroWeight(i64),

    #[error("leading exponent {0} of the Fricke transform is not 1/N for a positive integer N")]
    NonIntegerLevel(String),

    #[error("prefactor (prod a^b)^(-1/2) = ({0})^(-1/2) is not a positive integer")]
    PrefactorNotInteger(String),

    #[error("simple root index {0} does not exist for this class")]
    UnknownIndex(String),

    #[error("missing Adams data for level k = {0}")]
    MissingAdamsData(u32),

    #[error("matrix violates the hypothesis: {0}")]
    Hypothesis(String),

    #[error("tables are not comparable: {0}")]
    Incomparable(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Errors caused by what the caller handed in, as opposed to a failed
    /// internal consistency check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Invalid(_)
                | Error::Io { .. }
                | Error::NonzeroWeight(_)
                | Error::NonIntegerLevel(_)
                | Error::PrefactorNotInteger(_)
                | Error::Hypothesis(_)
                | Error::UnknownIndex(_)
                | Error::MissingAdamsData(_)
        )
    }
}
