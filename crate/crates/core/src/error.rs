use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable machine-readable kind.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("codimension condition violated: {0}")]
    Codimension(String),
    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),
    #[error("complex axiom violated between {first} and {second}: {reason}")]
    ComplexAxiom {
        first: String,
        second: String,
        reason: String,
    },
    #[error("complex is not pure-dimensional: {0}")]
    Purity(String),
    #[error("balancing required: {0}")]
    BalancingRequired(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("matroid axiom violated: {0}")]
    MatroidAxiom(String),
    #[error("matroid has loops at elements {0:?}")]
    Loop(Vec<usize>),
    #[error("element {0} is a coloop")]
    Coloop(usize),
    #[error("non-integral slope: {0}")]
    Integrality(String),
    #[error("invalid modification: {0}")]
    Modification(String),
    #[error("projection is not a tropical modification: {0}")]
    NotAModification(String),
    #[error("integration domain is unbounded: {0}")]
    UnboundedDomain(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "DimensionError",
            Error::Codimension(_) => "CodimensionError",
            Error::InvalidPolyhedron(_) => "InvalidPolyhedronError",
            Error::ComplexAxiom { .. } => "ComplexAxiomError",
            Error::Purity(_) => "PurityError",
            Error::BalancingRequired(_) => "BalancingRequiredError",
            Error::Parse(_) => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::MatroidAxiom(_) => "MatroidAxiomError",
            Error::Loop(_) => "LoopError",
            Error::Coloop(_) => "ColoopError",
            Error::Integrality(_) => "IntegralityError",
            Error::Modification(_) => "ModificationError",
            Error::NotAModification(_) => "NotAModificationError",
            Error::UnboundedDomain(_) => "UnboundedDomainError",
            Error::Degree(_) => "DegreeError",
            Error::InternalConsistency(_) => "InternalConsistencyError",
        }
    }

    /// Parse errors map to exit code 2 at the command line, everything else to 1.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
