//! Structure-learning strategies: the PC family, greedy equivalence search,
//! and loaders for results produced outside this harness.
//!
//! Every variant implements [`SearchAlgorithm`]; the harness runs them as
//! trait objects and never branches on which algorithm is inside.

use crate::data::{DataError, DataSet, DataType};
use crate::graph::{cpdag_of, Graph, GraphError, GraphKind};
use crate::oracle::{IndependenceTest, LocalScore, OracleError};
use std::path::{Path, PathBuf};
use thiserror::Error;

mod external;
mod fas;
mod ges;
mod orient;
mod pc;
mod strategy;

pub use external::{
    elapsed_file_path, elapsed_seconds_from_file, load_matrix_result, load_native_result,
    results_graph_path, ELAPSED_UNAVAILABLE_SECONDS,
};
pub use fas::{fas, FasResult, SepsetMap};
pub use ges::{ges_search, GesTrace};
pub use orient::{
    orient_colliders_conservative, orient_colliders_from_sepsets, orient_colliders_standard,
    unshielded_triples, TripleMark, TripleMarks,
};
pub use pc::{pc_search, PcFlavor, PcOutput};
pub use strategy::{
    external_description, ExternalMatrixStrategy, ExternalNativeStrategy, GesStrategy, PcStrategy,
    ScoreBinding, TestBinding,
};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("variant requires the true graph, which is unavailable here")]
    TrueGraphRequired,
    #[error("variant loads results from files but no results root was supplied")]
    ExternalRootRequired,
    #[error("missing result file `{0}`")]
    MissingResult(PathBuf),
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("matrix result file `{path}`: {reason}")]
    MatrixFormat { path: PathBuf, reason: String },
    #[error("initial graph does not cover variable `{0}`")]
    InitialGraphMismatch(String),
}

/// Data a variant can run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataTypeReq {
    Continuous,
    Discrete,
    Any,
}

impl DataTypeReq {
    pub fn accepts(self, t: DataType) -> bool {
        match self {
            DataTypeReq::Continuous => t == DataType::Continuous,
            DataTypeReq::Discrete => t == DataType::Discrete,
            DataTypeReq::Any => true,
        }
    }

    /// Requirement satisfied by both inputs, if any.
    pub fn combine(self, other: DataTypeReq) -> Option<DataTypeReq> {
        match (self, other) {
            (DataTypeReq::Any, o) => Some(o),
            (s, DataTypeReq::Any) => Some(s),
            (s, o) if s == o => Some(s),
            _ => None,
        }
    }
}

/// Everything one run hands to a variant.
pub struct RunInput<'a> {
    pub data: &'a DataSet,
    pub true_graph: Option<&'a Graph>,
    pub sim_index: usize,
    pub run_index: usize,
    /// Root of the `results/` and `elapsed/` trees for external variants.
    pub external_root: Option<&'a Path>,
}

/// A runnable algorithm variant with fully resolved tuning.
pub trait SearchAlgorithm {
    fn search(&self, input: &RunInput) -> Result<Graph, SearchError>;
    fn description(&self) -> &str;
    fn data_type(&self) -> DataTypeReq;
    fn comparison_kind(&self) -> GraphKind {
        GraphKind::TrueCpdag
    }
    /// Elapsed seconds read from files, for variants that are not timed by
    /// the harness.
    fn external_elapsed_seconds(&self, _input: &RunInput) -> Option<f64> {
        None
    }
}

/// The graph an estimate is scored against. Latent nodes are removed by
/// restriction to the measured subgraph before anything else; the pattern
/// of that restriction approximates the ideal comparison object when
/// latents are present.
pub fn comparison_graph_for(
    kind: GraphKind,
    true_dag: &Graph,
    override_kind: Option<GraphKind>,
) -> Result<Graph, GraphError> {
    let measured = true_dag.measured_subgraph();
    match override_kind.unwrap_or(kind) {
        GraphKind::TrueDag => Ok(measured),
        GraphKind::TrueCpdag => cpdag_of(&measured),
    }
}

/// Build the test an independence-based variant runs with. Kept here so
/// searches can be driven by any [`IndependenceTest`] without knowing its
/// data requirements.
pub(crate) fn build_test<'a>(
    binding: &TestBinding,
    input: &RunInput<'a>,
    alpha: f64,
) -> Result<Box<dyn IndependenceTest + 'a>, SearchError> {
    use crate::oracle::{ChiSquareTest, DsepTest, FisherZTest};
    match binding {
        TestBinding::FisherZ => Ok(Box::new(FisherZTest::new(input.data, alpha)?)),
        TestBinding::ChiSquare => Ok(Box::new(ChiSquareTest::new(input.data, alpha))),
        TestBinding::DSeparation => {
            let graph = input.true_graph.ok_or(SearchError::TrueGraphRequired)?;
            let names = input.data.names();
            Ok(Box::new(DsepTest::new(graph, &names)?))
        }
    }
}

pub(crate) fn build_score<'a>(
    binding: &ScoreBinding,
    input: &RunInput<'a>,
    penalty_discount: f64,
) -> Result<Box<dyn LocalScore + 'a>, SearchError> {
    use crate::oracle::{DiscreteBicScore, SemBicScore};
    match binding {
        ScoreBinding::SemBic => Ok(Box::new(SemBicScore::new(input.data, penalty_discount)?)),
        ScoreBinding::DiscreteBic => {
            Ok(Box::new(DiscreteBicScore::new(input.data, penalty_discount)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Mark;

    #[test]
    fn comparison_graph_defaults_to_the_pattern() {
        // Xi -> Xk, Xk -> Xm, Xj -> Xl, Xm -> Xl
        let mut g = Graph::new(vec!["Xi", "Xj", "Xk", "Xl", "Xm"]).unwrap();
        g.add_directed(0, 2).unwrap();
        g.add_directed(2, 4).unwrap();
        g.add_directed(1, 3).unwrap();
        g.add_directed(4, 3).unwrap();
        let pattern = comparison_graph_for(GraphKind::TrueCpdag, &g, None).unwrap();
        assert!(pattern.has_undirected(0, 2));
        assert!(pattern.has_directed(1, 3));
        let dag = comparison_graph_for(GraphKind::TrueCpdag, &g, Some(GraphKind::TrueDag)).unwrap();
        assert_eq!(dag, g);
    }

    #[test]
    fn latents_are_projected_out_by_restriction() {
        let mut g = Graph::with_latents(vec!["X1", "X2", "L1"], vec![false, false, true]).unwrap();
        g.add_directed(2, 0).unwrap();
        g.add_directed(2, 1).unwrap();
        let cmp = comparison_graph_for(GraphKind::TrueCpdag, &g, None).unwrap();
        assert_eq!(cmp.node_count(), 2);
        assert_eq!(cmp.edge_count(), 0);
    }

    #[test]
    fn data_type_requirements_combine() {
        assert_eq!(
            DataTypeReq::Any.combine(DataTypeReq::Continuous),
            Some(DataTypeReq::Continuous)
        );
        assert_eq!(
            DataTypeReq::Continuous.combine(DataTypeReq::Continuous),
            Some(DataTypeReq::Continuous)
        );
        assert_eq!(DataTypeReq::Continuous.combine(DataTypeReq::Discrete), None);
        assert!(DataTypeReq::Any.accepts(DataType::Discrete));
        assert!(!DataTypeReq::Discrete.accepts(DataType::Continuous));
    }

    #[test]
    fn bidirected_edges_survive_restriction() {
        let mut g = Graph::new(vec!["A", "B"]).unwrap();
        g.add_bidirected(0, 1).unwrap();
        let m = g.measured_subgraph();
        let e = m.edge_between(0, 1).unwrap();
        assert_eq!((e.mark_a, e.mark_b), (Mark::Arrow, Mark::Arrow));
    }
}
