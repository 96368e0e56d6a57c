use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{a} has no inverse modulo {modulus}")]
    NotInvertible { a: i64, modulus: u64 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("residue {i} is outside 1..={max} for p = {p}")]
    ResidueOutOfRange { i: u64, p: u64, max: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid abacus: {0}")]
    InvalidAbacus(String),

    #[error("invalid bead multiplicities: {0}")]
    InvalidMultiplicities(String),

    /// A structural statement that the construction relies on did not hold.
    /// Seeing this means either a bug or a counterexample.
    #[error("invariant violated for p = {p}: {detail}")]
    Invariant { p: u64, detail: String },

    #[error("{what} limit exceeded: {requested} > {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("maximum is not unique for p = {p}: {detail}")]
    NonUniqueMaximum { p: u64, detail: String },
}

impl Error {
    pub(crate) fn invariant(p: u64, detail: impl Into<String>) -> Self {
        Error::Invariant {
            p,
            detail: detail.into(),
        }
    }
}
