//! Name-keyed registry of the pluggable strategies: simulation styles,
//! algorithms, independence tests, scores, and statistics. Config files and
//! the CLI select everything through these lookups.

use crate::graph::GraphKind;
use crate::params::{ParamError, ParamValue, ParameterGrid};
use crate::search::{
    DataTypeReq, ExternalMatrixStrategy, ExternalNativeStrategy, GesStrategy, PcFlavor,
    PcStrategy, ScoreBinding, SearchAlgorithm, TestBinding,
};
use crate::sim::{BayesNetStyle, SemStyle, SimulationStyle};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegistryError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("unknown simulation style `{0}`")]
    UnknownSimulation(String),
    #[error("unknown independence test `{0}`")]
    UnknownTest(String),
    #[error("unknown score `{0}`")]
    UnknownScore(String),
    #[error("algorithm `{id}` requires `{what}`")]
    MissingBinding { id: String, what: String },
    #[error("algorithm `{id}` does not accept `{what}`")]
    UnexpectedBinding { id: String, what: String },
    #[error("`{0}` combines strategies with incompatible data types")]
    IncompatibleDataTypes(String),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// An algorithm request as written in a config file: ids plus optional
/// bindings, an optional initial-graph producer, and pinned tuning values.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    pub id: String,
    pub test: Option<String>,
    pub score: Option<String>,
    pub dir: Option<String>,
    pub initial: Option<Box<AlgorithmSpec>>,
    pub overrides: Vec<(String, ParamValue)>,
}

impl AlgorithmSpec {
    pub fn new(id: &str) -> Self {
        AlgorithmSpec {
            id: id.to_string(),
            test: None,
            score: None,
            dir: None,
            initial: None,
            overrides: Vec::new(),
        }
    }
}

pub const ALGORITHM_IDS: &[&str] =
    &["pc", "pc_stable", "cpc", "cpc_stable", "ges", "external_native", "external_matrix"];

pub fn all_simulation_styles() -> Vec<Box<dyn SimulationStyle>> {
    vec![Box::new(SemStyle), Box::new(BayesNetStyle)]
}

pub fn simulation_style(id: &str) -> Result<Box<dyn SimulationStyle>, RegistryError> {
    all_simulation_styles()
        .into_iter()
        .find(|s| s.id() == id)
        .ok_or_else(|| RegistryError::UnknownSimulation(id.to_string()))
}

pub fn all_test_bindings() -> [TestBinding; 3] {
    [TestBinding::FisherZ, TestBinding::ChiSquare, TestBinding::DSeparation]
}

pub fn test_binding(id: &str) -> Result<TestBinding, RegistryError> {
    all_test_bindings()
        .into_iter()
        .find(|t| t.id() == id)
        .ok_or_else(|| RegistryError::UnknownTest(id.to_string()))
}

pub fn all_score_bindings() -> [ScoreBinding; 2] {
    [ScoreBinding::SemBic, ScoreBinding::DiscreteBic]
}

pub fn score_binding(id: &str) -> Result<ScoreBinding, RegistryError> {
    all_score_bindings()
        .into_iter()
        .find(|s| s.id() == id)
        .ok_or_else(|| RegistryError::UnknownScore(id.to_string()))
}

fn pc_flavor(id: &str) -> Option<PcFlavor> {
    match id {
        "pc" => Some(PcFlavor::Pc),
        "pc_stable" => Some(PcFlavor::PcStable),
        "cpc" => Some(PcFlavor::Cpc),
        "cpc_stable" => Some(PcFlavor::CpcStable),
        _ => None,
    }
}

fn base_description(id: &str) -> &'static str {
    match id {
        "pc" => "PC (\"Peter and Clark\")",
        "pc_stable" => "PC-stable (\"Peter and Clark\" stable)",
        "cpc" => "CPC (Conservative \"Peter and Clark\")",
        "cpc_stable" => "CPC-stable (Conservative \"Peter and Clark\" stable)",
        "ges" => "GES (Greedy Equivalence Search)",
        _ => "",
    }
}

/// The tuning-parameter names an algorithm spec responds to, including its
/// test or score and any initial-graph producer.
pub fn variant_parameter_names(spec: &AlgorithmSpec) -> Result<Vec<&'static str>, RegistryError> {
    let mut names: Vec<&'static str> = Vec::new();
    let mut push = |more: &[&'static str]| {
        for &n in more {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    };
    match spec.id.as_str() {
        id if pc_flavor(id).is_some() => {
            let test = spec
                .test
                .as_deref()
                .ok_or_else(|| RegistryError::MissingBinding {
                    id: spec.id.clone(),
                    what: "test".to_string(),
                })?;
            push(&["depth"]);
            push(test_binding(test)?.parameter_names());
        }
        "ges" => {
            let score = spec
                .score
                .as_deref()
                .ok_or_else(|| RegistryError::MissingBinding {
                    id: spec.id.clone(),
                    what: "score".to_string(),
                })?;
            push(score_binding(score)?.parameter_names());
        }
        "external_native" | "external_matrix" => {
            if spec.dir.is_none() {
                return Err(RegistryError::MissingBinding {
                    id: spec.id.clone(),
                    what: "dir".to_string(),
                });
            }
        }
        other => return Err(RegistryError::UnknownAlgorithm(other.to_string())),
    }
    if let Some(initial) = &spec.initial {
        let inner = variant_parameter_names(initial)?;
        push(&inner);
    }
    Ok(names)
}

fn collect_overrides(spec: &AlgorithmSpec, into: &mut Vec<(String, ParamValue)>) {
    into.extend(spec.overrides.iter().cloned());
    if let Some(initial) = &spec.initial {
        collect_overrides(initial, into);
    }
}

fn build_one(
    spec: &AlgorithmSpec,
    point: &crate::params::ParamPoint,
) -> Result<Box<dyn SearchAlgorithm>, RegistryError> {
    if let Some(flavor) = pc_flavor(&spec.id) {
        let test_id = spec.test.as_deref().ok_or_else(|| RegistryError::MissingBinding {
            id: spec.id.clone(),
            what: "test".to_string(),
        })?;
        let test = test_binding(test_id)?;
        let initial = match &spec.initial {
            Some(inner) => Some(build_one(inner, point)?),
            None => None,
        };
        let mut description =
            format!("{} using {}", base_description(&spec.id), test.description());
        let mut data_type = test.data_type();
        if let Some(init) = &initial {
            description.push_str(&format!(" with initial graph from {}", init.description()));
            data_type = data_type
                .combine(init.data_type())
                .ok_or_else(|| RegistryError::IncompatibleDataTypes(description.clone()))?;
        }
        let alpha = point.f64("alpha")?;
        let depth = point.i64("depth")?;
        return Ok(Box::new(PcStrategy {
            flavor,
            test,
            alpha,
            depth,
            initial,
            description,
            data_type,
            comparison_kind: GraphKind::TrueCpdag,
        }));
    }
    match spec.id.as_str() {
        "ges" => {
            let score_id = spec.score.as_deref().ok_or_else(|| RegistryError::MissingBinding {
                id: spec.id.clone(),
                what: "score".to_string(),
            })?;
            let score = score_binding(score_id)?;
            let initial = match &spec.initial {
                Some(inner) => Some(build_one(inner, point)?),
                None => None,
            };
            let mut description =
                format!("{} using {}", base_description("ges"), score.description());
            let mut data_type = score.data_type();
            if let Some(init) = &initial {
                description.push_str(&format!(" with initial graph from {}", init.description()));
                data_type = data_type
                    .combine(init.data_type())
                    .ok_or_else(|| RegistryError::IncompatibleDataTypes(description.clone()))?;
            }
            Ok(Box::new(GesStrategy {
                score,
                penalty_discount: point.f64("penaltyDiscount")?,
                initial,
                description,
                data_type,
                comparison_kind: GraphKind::TrueCpdag,
            }))
        }
        "external_native" | "external_matrix" => {
            let dir = spec.dir.clone().ok_or_else(|| RegistryError::MissingBinding {
                id: spec.id.clone(),
                what: "dir".to_string(),
            })?;
            let description = crate::search::external_description(&dir);
            if spec.id == "external_native" {
                Ok(Box::new(ExternalNativeStrategy {
                    dir,
                    description,
                    comparison_kind: GraphKind::TrueCpdag,
                }))
            } else {
                Ok(Box::new(ExternalMatrixStrategy {
                    dir,
                    description,
                    comparison_kind: GraphKind::TrueCpdag,
                }))
            }
        }
        other => Err(RegistryError::UnknownAlgorithm(other.to_string())),
    }
}

/// Expand every algorithm request over its multi-valued tuning parameters.
/// Variants appear request by request, grid combinations in declaration
/// order; each description carries a `, name = value` suffix for every
/// parameter that was multi-valued in the grid.
pub fn build_variants(
    specs: &[AlgorithmSpec],
    grid: &ParameterGrid,
) -> Result<Vec<Box<dyn SearchAlgorithm>>, RegistryError> {
    let mut out: Vec<Box<dyn SearchAlgorithm>> = Vec::new();
    for spec in specs {
        let names = variant_parameter_names(spec)?;
        let mut local_grid = grid.clone();
        let mut overrides = Vec::new();
        collect_overrides(spec, &mut overrides);
        for (name, value) in overrides {
            local_grid.set_single(&name, value);
        }
        let suffix_names: Vec<&str> =
            names.iter().copied().filter(|n| local_grid.is_multi(n)).collect();
        for point in crate::harness::expand_points(&local_grid, &names)? {
            let mut variant = build_one(spec, &point)?;
            if !suffix_names.is_empty() {
                let mut description = variant.description().to_string();
                for name in &suffix_names {
                    description.push_str(&format!(
                        ", {name} = {}",
                        point.get(name)?.render_description()
                    ));
                }
                variant = rewrap_description(variant, description);
            }
            out.push(variant);
        }
    }
    Ok(out)
}

/// A thin wrapper swapping out the description of a built variant.
struct Described {
    inner: Box<dyn SearchAlgorithm>,
    description: String,
}

impl SearchAlgorithm for Described {
    fn search(
        &self,
        input: &crate::search::RunInput,
    ) -> Result<crate::graph::Graph, crate::search::SearchError> {
        self.inner.search(input)
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn data_type(&self) -> DataTypeReq {
        self.inner.data_type()
    }

    fn comparison_kind(&self) -> GraphKind {
        self.inner.comparison_kind()
    }

    fn external_elapsed_seconds(&self, input: &crate::search::RunInput) -> Option<f64> {
        self.inner.external_elapsed_seconds(input)
    }
}

fn rewrap_description(
    inner: Box<dyn SearchAlgorithm>,
    description: String,
) -> Box<dyn SearchAlgorithm> {
    Box::new(Described { inner, description })
}
