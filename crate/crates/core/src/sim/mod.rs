//! Simulation of (true graph, dataset) bundles, and loading of previously
//! saved bundles from a directory tree.

use crate::data::{load_tabular, DataError, DataSet, DataType, VarKind};
use crate::graph::{parse_graph_text, random_forward_dag, Graph, GraphError, RandomDagSpec};
use crate::params::{ParamError, ParamPoint};
use crate::seed::{derive_seed, STREAM_DATA, STREAM_GRAPH};
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

mod bayes;
mod sem;

pub use bayes::{bayes_net_simulate, bayes_net_simulate_model, BayesModel};
pub use sem::{sem_simulate, sem_simulate_model, SemModel};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("sampleSize must be at least 1")]
    BadSampleSize,
    #[error("numCategories must be at least 2")]
    BadNumCategories,
    #[error("numRuns must be at least 1")]
    BadNumRuns,
    #[error("missing file `{0}`")]
    MissingFile(PathBuf),
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<ParamError> for SimError {
    fn from(e: ParamError) -> Self {
        SimError::Graph(GraphError::Param(e))
    }
}

/// One simulated run: the generating DAG (latents included) and the emitted
/// dataset over its measured nodes.
#[derive(Debug, Clone)]
pub struct SimRun {
    pub true_graph: Graph,
    pub data: DataSet,
}

#[derive(Debug, Clone)]
pub struct SimulationBundle {
    pub description: String,
    pub data_type: DataType,
    pub runs: Vec<SimRun>,
    pub source_parameters: ParamPoint,
}

/// A simulation style: how data is generated from a random DAG.
pub trait SimulationStyle {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn data_type(&self) -> DataType;
    /// Parameter names this style consumes; these are the names resolved
    /// into `parameters.txt` and the report blocks.
    fn parameter_names(&self) -> &'static [&'static str];
    fn simulate_data(&self, g: &Graph, p: &ParamPoint, seed: u64) -> Result<DataSet, SimError>;
}

/// Linear Gaussian structural equation model over a random forward DAG.
pub struct SemStyle;

impl SimulationStyle for SemStyle {
    fn id(&self) -> &'static str {
        "sem"
    }

    fn description(&self) -> &'static str {
        "Linear, Gaussian SEM simulation"
    }

    fn data_type(&self) -> DataType {
        DataType::Continuous
    }

    fn parameter_names(&self) -> &'static [&'static str] {
        &[
            "numMeasures",
            "numLatents",
            "avgDegree",
            "maxDegree",
            "maxIndegree",
            "maxOutdegree",
            "connected",
            "numRuns",
            "varLow",
            "varHigh",
            "coefLow",
            "coefHigh",
            "sampleSize",
        ]
    }

    fn simulate_data(&self, g: &Graph, p: &ParamPoint, seed: u64) -> Result<DataSet, SimError> {
        sem_simulate(g, p, seed)
    }
}

/// Multinomial Bayes net over a random forward DAG.
pub struct BayesNetStyle;

impl SimulationStyle for BayesNetStyle {
    fn id(&self) -> &'static str {
        "bayes_net"
    }

    fn description(&self) -> &'static str {
        "Multinomial Bayes net simulation"
    }

    fn data_type(&self) -> DataType {
        DataType::Discrete
    }

    fn parameter_names(&self) -> &'static [&'static str] {
        &[
            "numMeasures",
            "numLatents",
            "avgDegree",
            "maxDegree",
            "maxIndegree",
            "maxOutdegree",
            "connected",
            "numRuns",
            "numCategories",
            "sampleSize",
        ]
    }

    fn simulate_data(&self, g: &Graph, p: &ParamPoint, seed: u64) -> Result<DataSet, SimError> {
        bayes_net_simulate(g, p, seed)
    }
}

/// Build `numRuns` independent (graph, data) pairs. Run `i` of simulation
/// point `sim_index` draws its graph and data from seeds derived off
/// `(master_seed, sim_index, i)`, so any cell is reproducible in isolation.
pub fn make_simulation(
    style: &dyn SimulationStyle,
    point: &ParamPoint,
    master_seed: u64,
    sim_index: usize,
) -> Result<SimulationBundle, SimError> {
    let num_runs = point.usize("numRuns")?;
    if num_runs < 1 {
        return Err(SimError::BadNumRuns);
    }
    let dag_spec = RandomDagSpec::from_point(point)?;
    let mut runs = Vec::with_capacity(num_runs);
    for run in 0..num_runs {
        let graph_seed = derive_seed(master_seed, sim_index as u64, run as u64, STREAM_GRAPH);
        let data_seed = derive_seed(master_seed, sim_index as u64, run as u64, STREAM_DATA);
        let true_graph = random_forward_dag(&dag_spec, graph_seed);
        let data = style.simulate_data(&true_graph, point, data_seed)?;
        runs.push(SimRun { true_graph, data });
    }
    let mut source_parameters = ParamPoint::new();
    for &name in style.parameter_names() {
        source_parameters.insert(name, point.get(name)?);
    }
    Ok(SimulationBundle {
        description: style.description().to_string(),
        data_type: style.data_type(),
        runs,
        source_parameters,
    })
}

pub(crate) fn save_dir(root: &Path, index: usize) -> PathBuf {
    root.join(format!("save{}", index + 1))
}

pub(crate) fn graph_file(save: &Path, run: usize) -> PathBuf {
    save.join("graph").join(format!("graph.{}.txt", run + 1))
}

pub(crate) fn data_file(save: &Path, run: usize) -> PathBuf {
    save.join("data").join(format!("data.{}.txt", run + 1))
}

pub(crate) fn parameters_file(save: &Path) -> PathBuf {
    save.join("parameters.txt")
}

pub(crate) fn description_file(save: &Path) -> PathBuf {
    save.join("description.txt")
}

const LOAD_DESCRIPTION: &str = "Load data sets and graphs from a directory.";

fn read_file(path: &Path) -> Result<String, SimError> {
    if !path.is_file() {
        return Err(SimError::MissingFile(path.to_path_buf()));
    }
    fs::read_to_string(path).map_err(|source| SimError::Io { path: path.to_path_buf(), source })
}

/// Load every `save1..saveK` bundle under `root`, in index order. An empty
/// root yields an empty list.
pub fn load_from_directory(root: &Path) -> Result<Vec<SimulationBundle>, SimError> {
    let mut bundles = Vec::new();
    for index in 0.. {
        let dir = save_dir(root, index);
        if !dir.is_dir() {
            break;
        }
        bundles.push(load_save_directory(&dir)?);
    }
    Ok(bundles)
}

fn load_save_directory(dir: &Path) -> Result<SimulationBundle, SimError> {
    let point = ParamPoint::parse_lines(&read_file(&parameters_file(dir))?)?;
    let num_runs = point.usize("numRuns")?;

    // description.txt is written by saveToFiles: style description, then a
    // data type tag. Directories produced elsewhere may omit it, in which
    // case column types are inferred from the data.
    let mut style_description = None;
    let mut declared_type = None;
    if let Ok(text) = read_file(&description_file(dir)) {
        let mut lines = text.lines();
        style_description = lines.next().map(str::to_string);
        declared_type = match lines.next().map(str::trim) {
            Some("continuous") => Some(DataType::Continuous),
            Some("discrete") => Some(DataType::Discrete),
            _ => None,
        };
    }

    let mut runs = Vec::with_capacity(num_runs);
    for run in 0..num_runs {
        let graph_text = read_file(&graph_file(dir, run))?;
        let true_graph = parse_graph_text(&graph_text)?;
        let data_text = read_file(&data_file(dir, run))?;
        let data = match declared_type {
            Some(DataType::Continuous) => {
                let kinds = vec![VarKind::Continuous; header_width(&data_text)];
                load_tabular(&data_text, Some(&kinds))?
            }
            Some(DataType::Discrete) => {
                let categories = point.usize("numCategories")?;
                let kinds = vec![VarKind::Discrete { categories }; header_width(&data_text)];
                load_tabular(&data_text, Some(&kinds))?
            }
            None => load_tabular(&data_text, None)?,
        };
        runs.push(SimRun { true_graph, data });
    }

    let data_type = declared_type.unwrap_or_else(|| match runs.first() {
        Some(run) if run.data.all_discrete() => DataType::Discrete,
        _ => DataType::Continuous,
    });
    let description = match &style_description {
        Some(d) if !d.is_empty() => format!("{LOAD_DESCRIPTION}\n\n{d}"),
        _ => LOAD_DESCRIPTION.to_string(),
    };
    Ok(SimulationBundle { description, data_type, runs, source_parameters: point })
}

fn header_width(text: &str) -> usize {
    text.lines().next().map(|l| l.split('\t').count()).unwrap_or(0)
}
