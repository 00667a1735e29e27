use thiserror::Error;

/// Errors raised by the library. Every variant is a validation failure of
/// the caller's input; none of them indicate an internal inconsistency.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroFactorization,
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("polynomial is reducible over Q")]
    ReduciblePolynomial,
    #[error("cubic is not totally real (discriminant {0})")]
    NotTotallyReal(String),
    #[error("mu generates no cubic field")]
    DegenerateMu,
    #[error("mu is not contained in Z + 2O")]
    MuNotInOrder,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("lattice is not a ring: {0}")]
    NotARing(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("b = 0: the curve is excluded (invariants j = u/b^l have a pole)")]
    ZeroB,
    #[error("prime {0} divides 6; reduction types are classified only for p >= 5")]
    PrimeDividesSix(String),
    #[error("j1 = 0: reconstruction needs a(C) != 0")]
    ZeroJ1,
    #[error("reconstructed curve is singular")]
    SingularCurve,
    #[error("repeated j1 value {0} in class polynomial input")]
    RepeatedJ1(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not implemented: {0}")]
    NotImplemented(String),
}

impl Error {
    /// A stable machine-readable name for the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroFactorization => "zero_factorization",
            Error::ZeroValuation => "zero_valuation",
            Error::NotPrime(_) => "not_prime",
            Error::ReduciblePolynomial => "reducible_polynomial",
            Error::NotTotallyReal(_) => "not_totally_real",
            Error::DegenerateMu => "degenerate_mu",
            Error::MuNotInOrder => "mu_not_in_order",
            Error::InvalidLattice(_) => "invalid_lattice",
            Error::NotARing(_) => "not_a_ring",
            Error::OutOfRange(_) => "out_of_range",
            Error::ZeroB => "zero_b",
            Error::PrimeDividesSix(_) => "prime_divides_six",
            Error::ZeroJ1 => "zero_j1",
            Error::SingularCurve => "singular_curve",
            Error::RepeatedJ1(_) => "repeated_j1",
            Error::Parse(_) => "parse",
            Error::NotImplemented(_) => "not_implemented",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
