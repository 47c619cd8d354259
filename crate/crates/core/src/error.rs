use thiserror::Error;

use crate::model::Dim;

/// Violations of the structural invariants of scenario and cognitive maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("{role} id is empty")]
    EmptyId { role: &'static str },
    #[error("duplicate {role} id `{id}`")]
    DuplicateId { role: &'static str, id: String },
    #[error("alternative `{alternative}` references undeclared consequence `{consequence}`")]
    DanglingConsequence {
        alternative: String,
        consequence: String,
    },
    #[error("alternative `{alternative}` has no consequences")]
    EmptyAlternative { alternative: String },
    #[error("edge references unknown concept `{id}`")]
    UnknownConcept { id: String },
    #[error("concept `{id}` is both an alternative and a consequence")]
    RoleOverlap { id: String },
    #[error("cognitive map declares no {role}")]
    MissingRole { role: &'static str },
}

impl ValidationError {
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationError::EmptyId { .. } => "EmptyId",
            ValidationError::DuplicateId { .. } => "DuplicateId",
            ValidationError::DanglingConsequence { .. } => "DanglingConsequence",
            ValidationError::EmptyAlternative { .. } => "EmptyAlternative",
            ValidationError::UnknownConcept { .. } => "UnknownConcept",
            ValidationError::RoleOverlap { .. } => "RoleOverlap",
            ValidationError::MissingRole { .. } => "MissingRole",
        }
    }
}

/// Structural problems with an intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix has {rows} rows for {ids} hyperedge ids")]
    RowCount { rows: usize, ids: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is below the -1 sentinel")]
    BelowSentinel { row: usize, col: usize, value: Dim },
    #[error("hyperedge `{id}` has negative dimension {value}")]
    EmptyHyperedge { id: String, value: Dim },
    #[error("matrix is not symmetric at ({row}, {col}): {upper} != {lower}")]
    Asymmetric {
        row: usize,
        col: usize,
        upper: Dim,
        lower: Dim,
    },
    #[error("shared face ({row}, {col}) = {value} exceeds the smaller hyperedge dimension {bound}")]
    FaceExceedsHyperedge {
        row: usize,
        col: usize,
        value: Dim,
        bound: Dim,
    },
    #[error(transparent)]
    Ids(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationError),
    #[error("alternative `{alternative}` reaches no consequence")]
    UnreachableAlternative { alternative: String },
}

impl From<MatrixError> for IngestError {
    fn from(err: MatrixError) -> Self {
        match err {
            MatrixError::Ids(inner) => IngestError::Validation(inner),
            other => IngestError::Schema(other.to_string()),
        }
    }
}

impl IngestError {
    pub fn kind(&self) -> &'static str {
        match self {
            IngestError::Malformed(_) => "MalformedDocument",
            IngestError::Schema(_) => "SchemaViolation",
            IngestError::Validation(_) => "ValidationFailure",
            IngestError::UnreachableAlternative { .. } => "UnreachableAlternative",
        }
    }

    /// The underlying validation failure, when there is one.
    pub fn cause(&self) -> Option<&'static str> {
        match self {
            IngestError::Validation(inner) => Some(inner.kind()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("level {q} outside 0..={max}")]
    LevelOutOfRange { q: usize, max: Dim },
    #[error("no two hyperedges share a vertex")]
    NoSharedFaces,
    #[error("structure vector entry s_{q} is zero")]
    ZeroClassCount { q: usize },
    #[error("invalid band [{lo}, {hi}]")]
    InvalidBand { lo: i64, hi: i64 },
}

impl AnalysisError {
    pub fn kind(&self) -> &'static str {
        match self {
            AnalysisError::LevelOutOfRange { .. } => "LevelOutOfRange",
            AnalysisError::NoSharedFaces => "NoSharedFaces",
            AnalysisError::ZeroClassCount { .. } => "ZeroClassCount",
            AnalysisError::InvalidBand { .. } => "InvalidBand",
        }
    }
}

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Ingest(e) => e.kind(),
            Error::Analysis(e) => e.kind(),
        }
    }

    pub fn cause(&self) -> Option<&'static str> {
        match self {
            Error::Ingest(e) => e.cause(),
            Error::Analysis(_) => None,
        }
    }
}

impl From<ValidationError> for Error {
    fn from(err: ValidationError) -> Self {
        Error::Ingest(IngestError::Validation(err))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
