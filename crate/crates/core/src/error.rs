use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node `{node}`")]
    SelfLoop { line: usize, node: String },

    #[error("invalid layer index {layer} (graph has {layers} layers)")]
    InvalidLayer { layer: usize, layers: usize },

    #[error("invalid cover instance: {0}")]
    InvalidInstance(String),

    #[error(
        "instance too large for exact solver ({what}: {size} > limit {limit}); \
         export the ILP with `mlstc export-lp` and use an external solver"
    )]
    BudgetExceeded { what: &'static str, size: u64, limit: u64 },

    #[error("instance outside oracle limits: {0}")]
    OracleLimits(String),

    #[error("{0}")]
    Usage(String),
}
