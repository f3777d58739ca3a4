use std::path::PathBuf;

/// Errors surfaced by graph construction, queries, and the CLI.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph has {n} node(s); this measure needs at least {min}")]
    TooFewNodes { n: usize, min: usize },

    #[error("graph is not connected; extract a component first")]
    Disconnected,

    #[error("pivot count {k} is outside 1..={n}")]
    InvalidPivotCount { k: usize, n: usize },

    #[error("sample size {size} is outside 1..={n}")]
    InvalidSampleSize { size: usize, n: usize },

    #[error("unknown actor: {0}")]
    UnknownActor(String),

    #[error("snapshot is not usable: {0}")]
    Snapshot(String),

    #[error("cannot read {path}: {source}")]
    ReadInput {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
