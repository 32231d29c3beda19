use std::path::PathBuf;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid marginal: {0}")]
    InvalidMarginal(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dataset is unlabeled")]
    UnlabeledDataset,

    #[error("dataset is empty")]
    EmptyData,

    #[error("dataset size {found} does not match localization sample size {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("empty localized space (r = {r})")]
    EmptyLocalizedSpace { r: f64 },

    #[error("radius not above capacity term: r = {r}, capacity = {capacity}")]
    RadiusNotAboveCapacity { r: f64, capacity: f64 },

    #[error("radius below ideal joint error: r = {r}, lambda = {lambda}")]
    RadiusBelowIdealJointError { r: f64, lambda: f64 },

    #[error("objective infeasible: {0}")]
    ObjectiveInfeasible(String),

    #[error("unbounded parameter box for population search")]
    UnboundedParameterBox,

    #[error("mode {mode} requires {needs}")]
    ModeMismatch { mode: &'static str, needs: &'static str },

    #[error("theorem {theorem} cannot be paired with objective {objective}")]
    TheoremObjectiveMismatch { theorem: String, objective: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
