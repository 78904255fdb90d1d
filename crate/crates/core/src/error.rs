use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("residue {element} is outside [0, {modulus})")]
    ElementOutOfRange { element: u64, modulus: u64 },
    #[error("residue {0} appears more than once in the family")]
    SetsNotDisjoint(u64),
    #[error("a family needs at least one set")]
    EmptyFamily,
    #[error("modulus {0} is outside [1, 2^63 - 1]")]
    InvalidModulus(u64),
    #[error("residue {0} is not covered, so the family does not partition Z_v")]
    NotRateOne(u64),
    #[error("symbol {symbol} at position {position} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange {
        position: usize,
        symbol: u32,
        alphabet: u32,
    },

    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("order {order} does not divide {modulus} - 1")]
    OrderDoesNotDivide { order: u64, modulus: u64 },
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{value} is not congruent to {residue} modulo {modulus}")]
    WrongResidueClass {
        value: u64,
        residue: u64,
        modulus: u64,
    },

    #[error("verification needs {required} pair evaluations over Z_{modulus}, budget allows {allowed}")]
    BudgetExceeded {
        required: u128,
        allowed: u128,
        modulus: u64,
    },
    #[error("no claimed index to check")]
    NoClaim,
    #[error("cyclotomic-number formula predicts index {formula}, spectrum gives {spectrum}")]
    IndexFormulaMismatch { formula: u64, spectrum: u64 },
    #[error("claimed {claimed}, verified {verified}")]
    ClaimMismatch { claimed: String, verified: String },

    #[error("ingredient over Z_{0} is not perfect")]
    IngredientNotPerfect(u64),
    #[error("ingredient over Z_{0} is not regular")]
    IngredientNotRegular(u64),
    #[error("ingredient over Z_{0} does not form a difference family")]
    IngredientNotDF(u64),
    #[error("expected a single set, found {0}")]
    NotSingleSet(usize),
    #[error("single set over Z_{0} is not a difference set")]
    NotDifferenceSet(u64),
    #[error("({p}, {s}) is not an admissible hyperplane partition parameter pair")]
    NotAdmissible { p: u64, s: u32 },

    #[error("alphabet of size {alphabet} cannot carry {sets} marker symbols")]
    AlphabetTooSmall { alphabet: u32, sets: usize },
    #[error("payload has {got} symbols, layout has {expected} free positions")]
    PayloadLengthMismatch { expected: usize, got: usize },
    #[error("window has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("splice offset {offset} outside [1, {max}]")]
    OffsetOutOfRange { offset: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::SetsNotDisjoint(_) => "SetsNotDisjoint",
            Error::EmptyFamily => "EmptyFamily",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::NotRateOne(_) => "NotRateOne",
            Error::SymbolOutOfRange { .. } => "SymbolOutOfRange",
            Error::NotPrime(_) => "NotPrime",
            Error::OrderDoesNotDivide { .. } => "OrderDoesNotDivide",
            Error::NotCoprime(..) => "NotCoprime",
            Error::WrongResidueClass { .. } => "WrongResidueClass",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NoClaim => "NoClaim",
            Error::IndexFormulaMismatch { .. } => "IndexFormulaMismatch",
            Error::ClaimMismatch { .. } => "ClaimMismatch",
            Error::IngredientNotPerfect(_) => "IngredientNotPerfect",
            Error::IngredientNotRegular(_) => "IngredientNotRegular",
            Error::IngredientNotDF(_) => "IngredientNotDF",
            Error::NotSingleSet(_) => "NotSingleSet",
            Error::NotDifferenceSet(_) => "NotDifferenceSet",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::AlphabetTooSmall { .. } => "AlphabetTooSmall",
            Error::PayloadLengthMismatch { .. } => "PayloadLengthMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::OffsetOutOfRange { .. } => "OffsetOutOfRange",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }

    /// Process exit status: 2 validation/precondition, 3 verification
    /// mismatch, 4 budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 4,
            Error::IndexFormulaMismatch { .. } | Error::ClaimMismatch { .. } => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
