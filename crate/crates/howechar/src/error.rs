use crate::rootsys::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("family {family:?} does not admit rank {rank}")]
    InvalidRank { family: Family, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what} exceeds the enumeration cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("weight coordinate {0} has denominator other than 1 or 2")]
    BadDenominator(String),
    #[error("non-finite numeric value")]
    NonFinite,
    #[error("point is singular for the relevant roots")]
    SingularPoint,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("root {0} is orthogonal to the chamber direction")]
    NonConvergentDirection(String),
    #[error("series have different chambers")]
    ChamberMismatch,
    #[error("rational function has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("exponent {0} is not integral; exact evaluation impossible")]
    NonIntegralExponent(String),
    #[error("quadrature skipped {skipped} of {total} grid points")]
    QuadratureUnreliable { skipped: usize, total: usize },
    #[error("weight is not in the correspondence: {0}")]
    NotInCorrespondence(String),
    #[error("invalid embedding parameter: {0}")]
    InvalidEmbedding(String),
    #[error("weight {0} is not the minimal K-type (zero coefficient)")]
    NotMinimalKType(String),
    #[error("coefficient did not stabilise between truncations {0} and {1}")]
    TruncationTooSmall(String, String),
    #[error("formula inconsistency: {0}")]
    FormulaInconsistency(String),
    #[error("closed form needs distinct entries; use the Monte-Carlo path")]
    MonteCarloOnly,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, used by the CLI on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRank { .. } => "InvalidRank",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::BadDenominator(_) => "BadDenominator",
            Error::NonFinite => "NonFinite",
            Error::SingularPoint => "SingularPoint",
            Error::NotDominant(_) => "NotDominant",
            Error::NonConvergentDirection(_) => "NonConvergentDirection",
            Error::ChamberMismatch => "ChamberMismatch",
            Error::PoleAtPoint => "PoleAtPoint",
            Error::NonIntegralExponent(_) => "NonIntegralExponent",
            Error::QuadratureUnreliable { .. } => "QuadratureUnreliable",
            Error::NotInCorrespondence(_) => "NotInCorrespondence",
            Error::InvalidEmbedding(_) => "InvalidEmbedding",
            Error::NotMinimalKType(_) => "NotMinimalKType",
            Error::TruncationTooSmall(..) => "TruncationTooSmall",
            Error::FormulaInconsistency(_) => "FormulaInconsistency",
            Error::MonteCarloOnly => "MonteCarloOnly",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
