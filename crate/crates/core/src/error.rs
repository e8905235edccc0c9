use thiserror::Error;

use crate::coefficients::Rat;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported cyclotomic order {0}: only 1, 2 and odd primes are supported")]
    UnsupportedCyclotomicOrder(u32),

    #[error("root of unity power {power} out of range for order {order}")]
    RootPowerOutOfRange { order: u32, power: i64 },

    #[error("incompatible series contexts: {0}")]
    IncompatibleContext(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("truncation order {trunc} does not exceed the lowest exponent {lowest}")]
    TruncationTooLow { trunc: Box<Rat>, lowest: Box<Rat> },

    #[error("exponent {exponent} needs ramification {required}, context has {available}")]
    RamificationOverflow {
        exponent: Rat,
        required: u64,
        available: u32,
    },

    #[error("substitution q -> zeta*q^s is ambiguous on fractional exponent {0}")]
    BranchAmbiguous(Rat),

    #[error("cyclotomic order {order} cannot express the phase exp(2 pi i {exponent})")]
    PhaseUnavailable { order: u32, exponent: Rat },

    #[error("Hurwitz class number H(0) is not defined here")]
    HurwitzZero,

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("Picard number {0} is not realised by a K3 surface (need 0..=20 or 22)")]
    InvalidPicard(u32),

    #[error("unknown basis symbol {0} for this transformation")]
    UnknownBasis(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
