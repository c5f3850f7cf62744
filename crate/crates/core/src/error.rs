use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid weight spec: {0}")]
    InvalidSpec(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("operation requires a rank-1 weight spec, got rank {0}")]
    NotRankOne(usize),
    #[error("path is not balanced: {0}")]
    UnbalancedPath(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("non-integral recurrence step at n = {n}")]
    NonIntegralStep { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition requires the inner series to have zero constant term")]
    ComposeConstantTerm,
    #[error("series is not invertible: zero constant term")]
    NotAUnit,
    #[error("the symmetric reduction requires all weights equal to 1")]
    SymmetryRequiresAllOnes,
    #[error("equation system has a cyclic same-order dependency involving {0}")]
    CyclicSystem(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicError {
    #[error("series order {available} is too small: need at least {required}")]
    InsufficientOrder { required: usize, available: usize },
    #[error("no published equation for rank {0}")]
    UnsupportedRank(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("need at least {required} terms, got {available}")]
    InsufficientTerms { required: usize, available: usize },
    #[error("leading coefficient vanishes at n = {0}")]
    SingularLeadingCoefficient(usize),
    #[error("non-integral recurrence step at n = {n}")]
    NonIntegralStep { n: usize },
    #[error("need at least {required} seed terms, got {available}")]
    NotEnoughSeeds { required: usize, available: usize },
}

/// Umbrella error for callers that mix modules (the CLI, mostly).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// `module::Variant`, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Path(e) => match e {
                PathError::InvalidSpec(_) => "paths::InvalidSpec",
                PathError::InvalidPath(_) => "paths::InvalidPath",
                PathError::GuardExceeded(_) => "paths::GuardExceeded",
                PathError::NotRankOne(_) => "paths::NotRankOne",
                PathError::UnbalancedPath(_) => "paths::UnbalancedPath",
            },
            Error::Count(CountError::NonIntegralStep { .. }) => "counting::NonIntegralStep",
            Error::Series(e) => match e {
                SeriesError::ComposeConstantTerm => "genfunc::ComposeConstantTerm",
                SeriesError::NotAUnit => "genfunc::NotAUnit",
                SeriesError::SymmetryRequiresAllOnes => "genfunc::SymmetryRequiresAllOnes",
                SeriesError::CyclicSystem(_) => "genfunc::CyclicSystem",
            },
            Error::Algebraic(e) => match e {
                AlgebraicError::InsufficientOrder { .. } => "algebraics::InsufficientOrder",
                AlgebraicError::UnsupportedRank(_) => "algebraics::UnsupportedRank",
            },
            Error::Recurrence(e) => match e {
                RecurrenceError::InsufficientTerms { .. } => "recurrence::InsufficientTerms",
                RecurrenceError::SingularLeadingCoefficient(_) => {
                    "recurrence::SingularLeadingCoefficient"
                }
                RecurrenceError::NonIntegralStep { .. } => "recurrence::NonIntegralStep",
                RecurrenceError::NotEnoughSeeds { .. } => "recurrence::NotEnoughSeeds",
            },
            Error::Format(_) => "wire::Format",
        }
    }
}
