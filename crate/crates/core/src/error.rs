use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("conductor {from} does not divide {to}")]
    NotADivisor { from: u64, to: u64 },
    #[error("value is not a root of unity")]
    NotARootOfUnity,
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("no identity reached within {0} powers")]
    OrderCapExceeded(usize),
    #[error("eigenvalue multiplicity for exponent {exponent}/{order} is not a nonnegative integer")]
    NonIntegerMultiplicity { exponent: u64, order: u64 },
    #[error("group contains pseudo-reflections at element indices {0:?}")]
    PseudoReflectionPresent(Vec<usize>),
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error("cone is not Q-Gorenstein: {0}")]
    NotQGorenstein(String),
    #[error("ray set {0:?} does not span a face of the cone")]
    NotAFace(Vec<usize>),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("subgroup closure left the parent group")]
    NotASubgroupOfG,
    #[error("g^{c_prime} is not in H")]
    InvalidExponent { c_prime: u64 },
    #[error("subgroup is not abelian and normal")]
    HNotAbelianNormal,
    #[error("parse error at {position}: {message}")]
    ParseError { position: usize, message: String },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group and toric computations disagree on {0}")]
    OracleDisagreement(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
