use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the supported cap {cap}")]
    DegreeTooLarge { order: u128, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("n = {n} does not divide the multiplicative group order {group}")]
    NotCompatible { n: u64, group: u64 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for a unit (constant) polynomial")]
    UnitPolynomial,
    #[error("order search exceeds the supported range: {0}")]
    OrderSearchTooLarge(String),
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("characteristic {p} divides n = {n}")]
    CharacteristicDividesN { n: u64, p: u64 },
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("generator does not divide x^{n} - 1")]
    NotADivisor { n: usize },
    #[error("generator polynomial is not monic")]
    NotMonic,
    #[error("length {0} is prime; C_(n,1) is the zero code")]
    PrimeLength(u64),
    #[error("invalid length {0}")]
    InvalidLength(u64),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("codes are defined over different fields")]
    FieldMismatch,
    #[error("generator matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("code of dimension 0 has no minimum distance")]
    ZeroCode,
    #[error("enumeration needs {required} codewords, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("row space is not invariant under the cyclic shift")]
    NotCyclic,
    #[error("least prime factor of 1 is undefined")]
    LpfUndefined,
    #[error("integer coefficient overflow while computing cyclotomic polynomial {0}")]
    CoefficientOverflow(u64),
    #[error("invalid field literal {0:?}")]
    InvalidFieldLiteral(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
