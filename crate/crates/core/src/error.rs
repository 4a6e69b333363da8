use thiserror::Error;

/// Everything that can go wrong in a computation. Parse and validation
/// failures only come out of the job layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is not a unit (zero constant term)")]
    NotInvertible,
    #[error("operator is not a unit of the algebra")]
    NotAUnit,
    #[error("exp of a series with nonzero constant term")]
    NonzeroConstantTerm,
    #[error("resonant obstruction at order {0}")]
    Obstruction(usize),
    #[error("divisor is not monic in a")]
    NotMonic,
    #[error("vector does not generate the module")]
    NotAGenerator,
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("vector is not normal (it lies in bE)")]
    NotNormal,
    #[error("line is not stable under a")]
    NotStable,
    #[error("module is not a fresco: {0}")]
    NotAFresco(String),
    #[error("saturation did not stabilize: module is not regular")]
    NotRegular,
    #[error("module does not have the expected simple pole shape")]
    WrongShape,
    #[error("wrong rank: expected {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("p = 0: there is a single isomorphism class")]
    UniqueClass,
    #[error("module is not semi-simple")]
    NotSemisimple,
    #[error("parameter is not unique (p2 = 1)")]
    NonUnique,
    #[error("no normal rank one submodule passes the test")]
    SearchExhausted,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, AbError>;

impl AbError {
    /// Stable identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            AbError::DivisionByZero => "division_by_zero",
            AbError::NotInvertible => "not_invertible",
            AbError::NotAUnit => "not_a_unit",
            AbError::NonzeroConstantTerm => "nonzero_constant_term",
            AbError::Obstruction(_) => "obstruction",
            AbError::NotMonic => "not_monic",
            AbError::NotAGenerator => "not_a_generator",
            AbError::InsufficientOrder { .. } => "insufficient_order",
            AbError::NotNormal => "not_normal",
            AbError::NotStable => "not_stable",
            AbError::NotAFresco(_) => "not_a_fresco",
            AbError::NotRegular => "not_regular",
            AbError::WrongShape => "wrong_shape",
            AbError::WrongRank { .. } => "wrong_rank",
            AbError::UniqueClass => "unique_class",
            AbError::NotSemisimple => "not_semisimple",
            AbError::NonUnique => "non_unique",
            AbError::SearchExhausted => "search_exhausted",
            AbError::Degenerate(_) => "degenerate",
            AbError::Invalid(_) => "invalid_argument",
            AbError::Parse(_) => "parse_error",
            AbError::Validation(_) => "validation_error",
        }
    }

    /// 2 for bad input, 1 for a mathematical failure.
    pub fn exit_status(&self) -> i32 {
        match self {
            AbError::Parse(_) | AbError::Validation(_) | AbError::Invalid(_) => 2,
            _ => 1,
        }
    }
}
