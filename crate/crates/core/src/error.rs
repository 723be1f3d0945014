use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: Vec<usize> },
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("group ring elements belong to different groups")]
    ParentMismatch,
    #[error("action of N/H on the cyclotomic field is not faithful for pair {0}")]
    ActionNotFaithful(String),
    #[error("strong Shoda pair family is incomplete")]
    IncompleteFamily,
    #[error("dimension audit failed: components sum to {got}, group order {expected}")]
    DimensionMismatch { got: u64, expected: u64 },
    #[error("[H:K] = {0} is not a prime power")]
    PrimePowerRequired(u64),
    #[error("no class number h+ known for conductor {0}; supply one with --h-plus {0}=<value>")]
    UnknownClassNumber(u64),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("{0}")]
    Input(String),
}

impl Error {
    /// Stable variant name for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAGroup { .. } => "NotAGroup",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotNormal(_) => "NotNormal",
            Error::NotAbelian => "NotAbelian",
            Error::BadParameter(_) => "BadParameter",
            Error::ParentMismatch => "ParentMismatch",
            Error::ActionNotFaithful(_) => "ActionNotFaithful",
            Error::IncompleteFamily => "IncompleteFamily",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::PrimePowerRequired(_) => "PrimePowerRequired",
            Error::UnknownClassNumber(_) => "UnknownClassNumber",
            Error::NotCentral(_) => "NotCentral",
            Error::NotIntegral(_) => "NotIntegral",
            Error::NotInvertible => "NotInvertible",
            Error::Input(_) => "Input",
        }
    }
}
