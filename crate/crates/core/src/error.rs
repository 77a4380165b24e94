use std::fmt;

/// Why a Cayley table failed to describe a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupAxiom {
    NotClosed,
    NoIdentity,
    NotAssociative,
    MissingInverse,
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupAxiom::NotClosed => "not-closed",
            GroupAxiom::NoIdentity => "no-identity",
            GroupAxiom::NotAssociative => "not-associative",
            GroupAxiom::MissingInverse => "missing-inverse",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(GroupAxiom),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: String, actual: String },
    #[error("budget exceeded: {0}")]
    OverflowBudget(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no witness found: {0}")]
    NotFound(String),
    #[error("not a valid section: {0}")]
    NotAValidSection(String),
    #[error("derived coloring is not well defined: {0}")]
    WellDefinednessViolation(String),
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("degenerate point set: {0}")]
    DegenerateSet(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a size, digit or enumeration guard.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::OverflowBudget(_) | Error::SizeLimitExceeded(_))
    }

    /// True for errors that describe malformed or inconsistent input.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::NotAGroup(_)
                | Error::NotSolvable
                | Error::NotASubgroup(_)
                | Error::NotNormal(_)
                | Error::IndexOutOfRange(_)
                | Error::AlphabetMismatch(_)
                | Error::InvalidDegree(_)
                | Error::LengthMismatch { .. }
                | Error::NotAValidSection(_)
                | Error::DegenerateSet(_)
                | Error::InvalidInput(_)
                | Error::PreconditionViolated(_)
                | Error::Json(_)
        )
    }

    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAGroup(_) => "NotAGroup",
            Error::SizeLimitExceeded(_) => "SizeLimitExceeded",
            Error::NotSolvable => "NotSolvable",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotNormal(_) => "NotNormal",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::AlphabetMismatch(_) => "AlphabetMismatch",
            Error::InvalidDegree(_) => "InvalidDegree",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::OverflowBudget(_) => "OverflowBudget",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NotFound(_) => "NotFound",
            Error::NotAValidSection(_) => "NotAValidSection",
            Error::WellDefinednessViolation(_) => "WellDefinednessViolation",
            Error::WitnessRejected(_) => "WitnessRejected",
            Error::DegenerateSet(_) => "DegenerateSet",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Internal(_) => "Internal",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
