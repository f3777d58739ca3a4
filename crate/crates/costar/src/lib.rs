//! Co-star network analysis toolkit.
//!
//! Ingests JSON-lines movie records, builds an undirected co-star graph over
//! actors (multigraph and simple-graph views in one structure), and answers
//! shortest-path and centrality queries: degree, betweenness (exact or
//! pivot-sampled), and closeness, plus ranked report tables.
//!
//! The heavy loops — betweenness and sampled closeness — fan independent
//! single-source BFS runs out to a rayon pool when the default `parallel`
//! feature is on, and fall back to plain loops without it. Partial results
//! merge in a fixed order, so scores are bit-identical for any worker count.

pub mod centrality;
pub mod cli;
pub mod components;
pub mod engine;
mod error;
pub mod graph;
pub mod ingest;
pub mod paths;
pub mod reports;
pub mod snapshot;

pub use error::{Error, Result};
