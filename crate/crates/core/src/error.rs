use thiserror::Error;

use crate::coloring::Color;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected {expected} color codes, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("color {color} is outside the palette 1..={k}")]
    ColorOutOfRange { color: Color, k: Color },

    #[error("vertex {vertex} does not exist in K_{{2,{t}}}")]
    VertexOutOfRange { vertex: String, t: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph has {edges} edges, the brute-force oracle refuses more than {limit}")]
    GraphTooLarge { edges: usize, limit: usize },

    #[error("enumeration of ~{estimate} candidates exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
