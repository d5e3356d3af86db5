//! Conditional-independence tests and decomposable model scores.
//!
//! Tests decide `x ⊥ y | z`; scores rate a node given a candidate parent
//! set, higher being better. Both are strategies: searches hold them as
//! trait objects and never know which concrete test or score is running.

use crate::data::DataError;
use crate::graph::GraphError;
use thiserror::Error;

mod chi_square;
mod discrete_bic;
mod fisher_z;
mod sem_bic;

pub use chi_square::ChiSquareTest;
pub use discrete_bic::{discrete_bic_local, DiscreteBicScore};
pub use dsep_test::DsepTest;
pub use fisher_z::{fisher_z_statistic, FisherZTest};
pub use sem_bic::{sem_bic_local, SemBicScore};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("Fisher Z needs sampleSize - |z| - 3 > 0, got {n} - {z} - 3")]
    FisherZDomain { n: usize, z: usize },
    #[error("regression of `{0}` is rank deficient")]
    RankDeficient(String),
}

/// Outcome of one conditional-independence query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndependenceDecision {
    pub independent: bool,
    /// In [0, 1]; degenerate 0/1 for the graph oracle.
    pub p_value: f64,
    pub statistic: f64,
    /// Set when every stratum of a stratified test fell below its count
    /// floor and the decision defaulted to independence.
    pub skipped: bool,
}

pub trait IndependenceTest {
    fn decide(&self, x: usize, y: usize, z: &[usize]) -> Result<IndependenceDecision, OracleError>;
}

/// A decomposable local score: the total score of a DAG is the sum of
/// `local(y, parents(y))` over its nodes.
pub trait LocalScore {
    fn local(&self, y: usize, parents: &[usize]) -> Result<f64, OracleError>;
}
