//! Concrete [`SearchAlgorithm`] strategies with resolved tuning.

use super::{
    build_score, build_test, elapsed_file_path, elapsed_seconds_from_file, ges_search,
    load_matrix_result, load_native_result, pc_search, results_graph_path, DataTypeReq, PcFlavor,
    RunInput, SearchAlgorithm, SearchError,
};
use crate::graph::{Graph, GraphKind};

/// Which independence test a constraint-based variant runs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestBinding {
    FisherZ,
    ChiSquare,
    DSeparation,
}

impl TestBinding {
    pub fn id(self) -> &'static str {
        match self {
            TestBinding::FisherZ => "fisher_z",
            TestBinding::ChiSquare => "chi_square",
            TestBinding::DSeparation => "d_separation",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            TestBinding::FisherZ => "Fisher Z test",
            TestBinding::ChiSquare => "Chi Square test",
            TestBinding::DSeparation => "D-separation test",
        }
    }

    pub fn data_type(self) -> DataTypeReq {
        match self {
            TestBinding::FisherZ => DataTypeReq::Continuous,
            TestBinding::ChiSquare => DataTypeReq::Discrete,
            TestBinding::DSeparation => DataTypeReq::Any,
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            TestBinding::DSeparation => &[],
            _ => &["alpha"],
        }
    }
}

/// Which score a score-based variant runs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreBinding {
    SemBic,
    DiscreteBic,
}

impl ScoreBinding {
    pub fn id(self) -> &'static str {
        match self {
            ScoreBinding::SemBic => "sem_bic",
            ScoreBinding::DiscreteBic => "discrete_bic",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ScoreBinding::SemBic => "Sem BIC Score",
            ScoreBinding::DiscreteBic => "Discrete BIC Score",
        }
    }

    pub fn data_type(self) -> DataTypeReq {
        match self {
            ScoreBinding::SemBic => DataTypeReq::Continuous,
            ScoreBinding::DiscreteBic => DataTypeReq::Discrete,
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        &["penaltyDiscount"]
    }
}

/// A PC-family variant bound to a test, tuning point, and optional initial
/// graph producer.
pub struct PcStrategy {
    pub flavor: PcFlavor,
    pub test: TestBinding,
    pub alpha: f64,
    pub depth: i64,
    pub initial: Option<Box<dyn SearchAlgorithm>>,
    pub description: String,
    pub data_type: DataTypeReq,
    pub comparison_kind: GraphKind,
}

impl SearchAlgorithm for PcStrategy {
    fn search(&self, input: &RunInput) -> Result<Graph, SearchError> {
        let initial_graph = match &self.initial {
            Some(producer) => Some(producer.search(input)?),
            None => None,
        };
        let test = build_test(&self.test, input, self.alpha)?;
        let names = input.data.names();
        let output = pc_search(self.flavor, test.as_ref(), &names, self.depth, initial_graph.as_ref())?;
        Ok(output.graph)
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn data_type(&self) -> DataTypeReq {
        self.data_type
    }

    fn comparison_kind(&self) -> GraphKind {
        self.comparison_kind
    }
}

/// Greedy equivalence search bound to a score.
pub struct GesStrategy {
    pub score: ScoreBinding,
    pub penalty_discount: f64,
    pub initial: Option<Box<dyn SearchAlgorithm>>,
    pub description: String,
    pub data_type: DataTypeReq,
    pub comparison_kind: GraphKind,
}

impl SearchAlgorithm for GesStrategy {
    fn search(&self, input: &RunInput) -> Result<Graph, SearchError> {
        let initial_graph = match &self.initial {
            Some(producer) => Some(producer.search(input)?),
            None => None,
        };
        let score = build_score(&self.score, input, self.penalty_discount)?;
        let names = input.data.names();
        let (graph, _) = ges_search(score.as_ref(), &names, initial_graph.as_ref())?;
        Ok(graph)
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn data_type(&self) -> DataTypeReq {
        self.data_type
    }

    fn comparison_kind(&self) -> GraphKind {
        self.comparison_kind
    }
}

/// Results written by another tool in the native graph text format.
pub struct ExternalNativeStrategy {
    pub dir: String,
    pub description: String,
    pub comparison_kind: GraphKind,
}

impl SearchAlgorithm for ExternalNativeStrategy {
    fn search(&self, input: &RunInput) -> Result<Graph, SearchError> {
        let root = input.external_root.ok_or(SearchError::ExternalRootRequired)?;
        load_native_result(&results_graph_path(root, &self.dir, input.sim_index, input.run_index))
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn data_type(&self) -> DataTypeReq {
        DataTypeReq::Any
    }

    fn comparison_kind(&self) -> GraphKind {
        self.comparison_kind
    }

    fn external_elapsed_seconds(&self, input: &RunInput) -> Option<f64> {
        Some(match input.external_root {
            Some(root) => elapsed_seconds_from_file(&elapsed_file_path(
                root,
                &self.dir,
                input.sim_index,
                input.run_index,
            )),
            None => super::ELAPSED_UNAVAILABLE_SECONDS,
        })
    }
}

/// Results written by another tool as 0/1 adjacency matrices.
pub struct ExternalMatrixStrategy {
    pub dir: String,
    pub description: String,
    pub comparison_kind: GraphKind,
}

impl SearchAlgorithm for ExternalMatrixStrategy {
    fn search(&self, input: &RunInput) -> Result<Graph, SearchError> {
        let root = input.external_root.ok_or(SearchError::ExternalRootRequired)?;
        load_matrix_result(&results_graph_path(root, &self.dir, input.sim_index, input.run_index))
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn data_type(&self) -> DataTypeReq {
        DataTypeReq::Any
    }

    fn comparison_kind(&self) -> GraphKind {
        self.comparison_kind
    }

    fn external_elapsed_seconds(&self, input: &RunInput) -> Option<f64> {
        Some(match input.external_root {
            Some(root) => elapsed_seconds_from_file(&elapsed_file_path(
                root,
                &self.dir,
                input.sim_index,
                input.run_index,
            )),
            None => super::ELAPSED_UNAVAILABLE_SECONDS,
        })
    }
}

/// Display name for an external results directory: underscores read as
/// spaces.
pub fn external_description(dir: &str) -> String {
    dir.replace('_', " ")
}
