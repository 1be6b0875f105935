use thiserror::Error;

/// Every failure the library can report.
///
/// Variants map one-to-one onto the names printed by the command-line front
/// end, see [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("two endpoints share the coordinate {0}")]
    DuplicateEndpoint(String),
    #[error("arc {id}: length {length} differs from its lattice combination {expected}")]
    InconsistentLattice {
        id: usize,
        length: String,
        expected: String,
    },
    #[error("expected {expected} arcs for genus {genus}, got {found}")]
    BadArity {
        genus: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed arc: {0}")]
    BadArc(String),
    #[error("shift of arc {0} changes the order of endpoints")]
    OrderChanged(usize),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("move leaves the stratum: {0}")]
    DegenerateResult(String),
    #[error("diagram is not a caravan")]
    NotACaravan,
    #[error("period entries must be positive")]
    NonPositiveLength,
    #[error("search exhausted after {explored} nodes")]
    SearchExhausted { explored: usize },
    #[error("degenerate diagram encountered: {0}")]
    DegenerateEncountered(String),
    #[error("generator index {index} out of range for genus {genus}")]
    BadIndex { index: usize, genus: usize },
    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
    #[error("tuple has a zero entry")]
    ZeroEntry,
    #[error("target period tuple contains a zero entry")]
    ZeroEntryInTarget,
    #[error("diagrams do not share a period lattice: {0}")]
    NotIsoperiodic(String),
    #[error("change of basis is integral but not symplectic")]
    NotSamePolarization,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("move {index} failed: {source}")]
    AtMove {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Stable identifier used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateEndpoint(_) => "DuplicateEndpoint",
            Error::InconsistentLattice { .. } => "InconsistentLattice",
            Error::BadArity { .. } => "BadArity",
            Error::BadArc(_) => "BadArc",
            Error::OrderChanged(_) => "OrderChanged",
            Error::NotApplicable(_) => "NotApplicable",
            Error::DegenerateResult(_) => "DegenerateResult",
            Error::NotACaravan => "NotACaravan",
            Error::NonPositiveLength => "NonPositiveLength",
            Error::SearchExhausted { .. } => "SearchExhausted",
            Error::DegenerateEncountered(_) => "DegenerateEncountered",
            Error::BadIndex { .. } => "BadIndex",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::NotSymplectic => "NotSymplectic",
            Error::InternalCheckFailed(_) => "InternalCheckFailed",
            Error::ZeroEntry => "ZeroEntry",
            Error::ZeroEntryInTarget => "ZeroEntryInTarget",
            Error::NotIsoperiodic(_) => "NotIsoperiodic",
            Error::NotSamePolarization => "NotSamePolarization",
            Error::Parse(_) => "Parse",
            Error::AtMove { source, .. } => source.kind(),
        }
    }

    pub(crate) fn at(index: usize, source: Error) -> Error {
        Error::AtMove {
            index,
            source: Box::new(source),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
