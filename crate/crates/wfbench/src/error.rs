use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data: asymmetric or negative distances, duplicate
    /// labels, unknown points, bad decimal strings. The message names the
    /// offending entry.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation was called outside its contract (wrong k, point not in
    /// configuration, mismatched domains, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A lookup that the table construction should have made impossible.
    #[error("internal consistency: {0}")]
    Inconsistency(String),

    /// An enumeration guard tripped before the computation started.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// Reproducer persistence failed part-way through a hunt. A partial
    /// report covering the instances examined so far has already been
    /// written to the output directory.
    #[error("hunt persistence failed after {written} reproducer(s): {source}")]
    Persist {
        written: usize,
        source: std::io::Error,
    },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
