use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero is not a valid input to {0}")]
    Zero(&'static str),

    #[error("{0} is not a prime")]
    NotPrime(BigInt),

    #[error("prime {0} exceeds the 63-bit range supported by modular arithmetic")]
    PrimeTooLarge(BigInt),

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("polynomial {0} is not monic")]
    NotMonic(IntPolynomial),

    #[error("polynomial is reducible over Q: factor {factor}")]
    Reducible { factor: IntPolynomial },

    #[error("irreducibility of {0} could not be decided within the effort budget")]
    IrreducibilityUnknown(IntPolynomial),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("operands are expressed over different bases")]
    MixedBasis,

    #[error("element is not integral over the order")]
    NotIntegral,

    #[error("proved criterion contradicted for {0}: trace is not surjective")]
    TheoremViolation(IntPolynomial),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
