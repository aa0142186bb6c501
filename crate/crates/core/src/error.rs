use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// The variant name doubles as the machine-readable reason printed by the
/// command-line driver, so renaming a variant is a breaking change.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime")]
    NonPrimeCharacteristic(u64),
    #[error("characteristic {0} exceeds the supported maximum of 251")]
    CharacteristicTooLarge(u64),
    #[error(
        "modulus must be monic of degree {expected} with coefficients below the characteristic"
    )]
    NonMonicOrWrongDegree { expected: usize },
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("group order p^n - 1 exceeds 2^63")]
    GroupOrderTooLarge,
    #[error("extension degree must be positive")]
    ZeroDegree,

    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("{t} does not divide the extension degree {n}")]
    NonDivisorDegree { t: u64, n: u64 },
    #[error("the residue class of x is not a primitive element")]
    NonPrimitiveAlpha,

    #[error("element or subspace does not belong to this field")]
    MixedContexts,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("enumeration of {requested} items exceeds the cap of {cap}")]
    EnumerationTooLarge { requested: u128, cap: u128 },
    #[error("dimension {k} out of range for degree {n}")]
    DimensionOutOfRange { k: usize, n: usize },

    #[error("subspace is zero or the whole field")]
    DegenerateSubspace,
    #[error("orbit generator must be nonzero")]
    ZeroGenerator,
    #[error("stabilizer degree of the center must exceed 1")]
    StabilizerTooSmall,
    #[error("extension element lies inside the center")]
    GeneratorInV,
    #[error("extended subspace does not generate a full-length orbit")]
    NotFullLength,
    #[error("orbit code is not a sunflower")]
    NotASunflower,

    #[error("residue {residue} outside Z_{modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error("residue {0} appears more than once")]
    DuplicateResidue(u64),
    #[error("set size {size} outside [2, {modulus})")]
    SizeOutOfRange { size: usize, modulus: u64 },
    #[error("subgroup order {n_sub} does not divide {modulus}")]
    NonDivisorSubgroup { n_sub: u64, modulus: u64 },
    #[error("modulus {0} too large for dense difference counting")]
    ModulusTooLarge(u64),
    #[error("orbit code is not equidistant")]
    NotEquidistant,
    #[error("orbit code is 0-intersecting")]
    ZeroIntersection,
    #[error("hypothesis of the requested bridge does not hold: {0}")]
    HypothesisMismatch(String),
    #[error("set is not a difference set")]
    NotADifferenceSet,
    #[error("spanned subspace has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameters must satisfy 1 <= t < k < n")]
    ParameterOrderViolation,
    #[error("property suite requires an even extension degree")]
    OddDegreeField,
    #[error("estimated {estimated} operations exceed the ceiling of {ceiling}")]
    BudgetExceeded { estimated: u128, ceiling: u128 },
    #[error("no recorded example with id {0}")]
    UnknownExample(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in single-line error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::CharacteristicTooLarge(_) => "CharacteristicTooLarge",
            Error::NonMonicOrWrongDegree { .. } => "NonMonicOrWrongDegree",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::GroupOrderTooLarge => "GroupOrderTooLarge",
            Error::ZeroDegree => "ZeroDegree",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroElement => "ZeroElement",
            Error::NonDivisorDegree { .. } => "NonDivisorDegree",
            Error::NonPrimitiveAlpha => "NonPrimitiveAlpha",
            Error::MixedContexts => "MixedContexts",
            Error::ZeroScalar => "ZeroScalar",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::DimensionOutOfRange { .. } => "DimensionOutOfRange",
            Error::DegenerateSubspace => "DegenerateSubspace",
            Error::ZeroGenerator => "ZeroGenerator",
            Error::StabilizerTooSmall => "StabilizerTooSmall",
            Error::GeneratorInV => "GeneratorInV",
            Error::NotFullLength => "NotFullLength",
            Error::NotASunflower => "NotASunflower",
            Error::ResidueOutOfRange { .. } => "ResidueOutOfRange",
            Error::DuplicateResidue(_) => "DuplicateResidue",
            Error::SizeOutOfRange { .. } => "SizeOutOfRange",
            Error::NonDivisorSubgroup { .. } => "NonDivisorSubgroup",
            Error::ModulusTooLarge(_) => "ModulusTooLarge",
            Error::NotEquidistant => "NotEquidistant",
            Error::ZeroIntersection => "ZeroIntersection",
            Error::HypothesisMismatch(_) => "HypothesisMismatch",
            Error::NotADifferenceSet => "NotADifferenceSet",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ParameterOrderViolation => "ParameterOrderViolation",
            Error::OddDegreeField => "OddDegreeField",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::UnknownExample(_) => "UnknownExample",
            Error::Parse(_) => "Parse",
        }
    }
}
