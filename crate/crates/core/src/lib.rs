//! Benchmark harness for causal structure-learning algorithms.
//!
//! The crate simulates causal graphical models and data, runs a family of
//! searches (the PC constraint-based variants and greedy equivalence
//! search), ingests results produced by external tools, scores every
//! estimate against a comparison graph with a battery of statistics, ranks
//! algorithms by a weighted utility, and renders a fixed-format text report.
//!
//! Algorithms, simulations, independence tests, scores, and statistics are
//! all strategies behind small traits, registered by name and selected at
//! runtime from a config file (see [`config`] and [`registry`]).

pub mod config;
pub mod data;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod oracle;
pub mod params;
pub mod registry;
pub mod search;
pub mod seed;
pub mod sim;

pub use graph::{Graph, GraphError, GraphKind, Mark};
pub use params::{ParamPoint, ParamValue, ParameterGrid};
