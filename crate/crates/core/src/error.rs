use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6: {reason} at byte {offset}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coloring is not total: expected {expected} colors, got {got}")]
    ColoringNotTotal { expected: usize, got: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("dimacs: {reason} (line {line})")]
    Dimacs { line: usize, reason: String },

    #[error("unknown fixture `{0}` (expected one of core, core+T1, H, F)")]
    UnknownFixture(String),

    #[error("instance too large for exhaustive mode: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
