use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial has degree {0}, expected at least {1}")]
    DegreeTooSmall(usize, usize),
    #[error("degree {0} exceeds the supported bound {1}")]
    DegreeTooLarge(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("modulus is not irreducible over the prime field")]
    ReducibleModulus,
    #[error("residue prime above {0} is flagged (ramified or dividing the field discriminant)")]
    FlaggedPrime(String),
    #[error("{0} does not divide the defining polynomial modulo the prime")]
    NotAFactor(String),
    #[error("ball does not isolate a unique integer")]
    NotAnInteger,
    #[error("root isolation failed at {bits} bits: {reason}")]
    Isolation { bits: u64, reason: String },
    #[error("precision cap of {0} bits exceeded")]
    PrecisionCap(u64),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
