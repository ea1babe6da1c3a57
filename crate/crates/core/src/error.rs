use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field order {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),
    #[error("modulus is not an irreducible monic polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{0} is not an element of the field")]
    InvalidElement(u64),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero form is required")]
    ZeroPolynomial,
    #[error("polynomials have different numbers of variables ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("degree {small} is smaller than required degree {large}")]
    DegreeTooSmall { small: usize, large: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("rank {index} out of range (count {count})")]
    RankOutOfRange { index: u64, count: u64 },
    #[error("operation would materialize {requested} items, limit is {limit}")]
    Capacity { requested: u128, limit: u128 },
    #[error("vector length {found} does not match ambient dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("declared dimension {declared} but rows have rank {rank}")]
    RankDeficient { declared: usize, rank: usize },
    #[error("generators {first} and {second} share the common divisor {divisor}")]
    NotCoprime {
        first: String,
        second: String,
        divisor: String,
    },
    #[error("family of generators is empty")]
    EmptyFamily,
    #[error("family mixes forms with different parameters")]
    MixedParameters,
    #[error("codewords {first} and {second} are at distance {found}, expected {expected}")]
    VerificationMismatch {
        first: usize,
        second: usize,
        found: usize,
        expected: usize,
    },
    #[error("channel configuration infeasible: {0}")]
    InfeasibleChannel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::NotPrimePower(_) => "not_prime_power",
            Error::ZeroExtensionDegree => "zero_extension_degree",
            Error::FieldTooLarge(_) => "field_too_large",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::MixedFields => "mixed_fields",
            Error::InvalidElement(_) => "invalid_element",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::VariableMismatch(..) => "variable_mismatch",
            Error::DegreeTooSmall { .. } => "degree_too_small",
            Error::ZeroDegree => "zero_degree",
            Error::RankOutOfRange { .. } => "rank_out_of_range",
            Error::Capacity { .. } => "capacity",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::NotCoprime { .. } => "not_coprime",
            Error::EmptyFamily => "empty_family",
            Error::MixedParameters => "mixed_parameters",
            Error::VerificationMismatch { .. } => "verification_mismatch",
            Error::InfeasibleChannel(_) => "infeasible_channel",
            Error::Parse(_) => "parse",
        }
    }
}
