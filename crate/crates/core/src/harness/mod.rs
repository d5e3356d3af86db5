//! The comparison engine: run every algorithm variant over every simulated
//! bundle, aggregate statistics per cell, rank by utility, and render the
//! report.

use crate::data::DataError;
use crate::graph::{Graph, GraphError, GraphKind};
use crate::metrics::{utility, MetricsError, Statistic, Weights};
use crate::params::{ParamError, ParamValue, ParameterGrid};
use crate::search::{comparison_graph_for, RunInput, SearchAlgorithm};
use crate::sim::{SimError, SimulationBundle};
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

mod config_report;
mod files;
mod grid;
mod report;

pub use config_report::configuration_report_text;
pub use files::{
    compare_external, compare_from_files, compare_from_simulations, save_to_files, write_report,
    ComparisonOutcome,
};
pub use grid::expand_points;
pub use report::render_report;

/// Master seed used when none is supplied, so benchmark runs are
/// reproducible by default.
pub const DEFAULT_MASTER_SEED: u64 = 42;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("cannot write `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("no saved simulations found under `{0}`")]
    EmptyRoot(PathBuf),
}

#[derive(Debug, Clone)]
pub struct ComparisonConfig {
    pub show_algorithm_indices: bool,
    pub show_simulation_indices: bool,
    pub sort_by_utility: bool,
    pub show_utilities: bool,
    pub tab_delimited: bool,
    pub comparison_override: Option<GraphKind>,
    pub master_seed: u64,
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        ComparisonConfig {
            show_algorithm_indices: true,
            show_simulation_indices: true,
            sort_by_utility: false,
            show_utilities: false,
            tab_delimited: false,
            comparison_override: None,
            master_seed: DEFAULT_MASTER_SEED,
        }
    }
}

/// A column of the report tables: a statistic, or the value of a resolved
/// parameter repeated down the rows (never weighted into the utility).
pub enum ReportColumn {
    Statistic(Box<dyn Statistic>),
    Parameter(String),
}

impl ReportColumn {
    pub fn label(&self) -> String {
        match self {
            ReportColumn::Statistic(s) => s.abbreviation().to_string(),
            ReportColumn::Parameter(name) => name.clone(),
        }
    }
}

/// The registered report columns plus the utility weighting.
pub struct StatisticsSpec {
    pub columns: Vec<ReportColumn>,
    pub weights: Weights,
}

impl StatisticsSpec {
    /// Every built-in statistic, unweighted.
    pub fn standard() -> Self {
        StatisticsSpec {
            columns: crate::metrics::all_statistics()
                .into_iter()
                .map(ReportColumn::Statistic)
                .collect(),
            weights: Weights::new(),
        }
    }

    fn statistic(&self, abbrev: &str) -> Option<&dyn Statistic> {
        self.columns.iter().find_map(|c| match c {
            ReportColumn::Statistic(s) if s.abbreviation() == abbrev => Some(s.as_ref()),
            _ => None,
        })
    }
}

/// Statistic values for one run of one cell.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub estimated: Option<Graph>,
    pub elapsed_seconds: f64,
    pub values: HashMap<String, f64>,
}

/// All runs of one (simulation, algorithm) pair.
#[derive(Debug, Clone)]
pub struct Cell {
    pub sim_index: usize,
    pub alg_index: usize,
    pub runs: Vec<RunRecord>,
}

/// One rendered row: per-statistic mean, sample deviation, and minimum,
/// plus the utility of the row's mean values.
#[derive(Debug, Clone)]
pub struct Row {
    pub sim_index: usize,
    pub alg_index: usize,
    pub means: HashMap<String, f64>,
    pub sds: HashMap<String, f64>,
    pub mins: HashMap<String, f64>,
    pub parameter_cells: HashMap<String, ParamValue>,
    pub utility: f64,
}

/// Everything the renderer needs, already ordered.
pub struct ReportTables {
    pub legend: Vec<String>,
    pub parameter_lines: Vec<String>,
    pub simulation_blocks: Vec<String>,
    pub algorithm_descriptions: Vec<String>,
    /// (weight, abbreviation) in column order.
    pub weight_lines: Vec<(f64, String)>,
    pub column_labels: Vec<String>,
    pub rows: Vec<Row>,
    pub show_algorithm_indices: bool,
    pub show_simulation_indices: bool,
    pub show_utilities: bool,
    pub tab_delimited: bool,
    pub multiple_simulations: bool,
    /// Set when any simulation carries latent variables: comparison
    /// graphs are then patterns of the measured restriction of the true
    /// DAG, an approximation worth calling out in the report.
    pub latent_note: bool,
}

/// Mean, sample standard deviation (n-1 denominator, NaN for a single
/// value), and minimum. NaN entries are excluded; all-NaN aggregates to
/// NaN.
pub fn aggregate(values: &[f64]) -> (f64, f64, f64) {
    let clean: Vec<f64> = values.iter().copied().filter(|v| !v.is_nan()).collect();
    if clean.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let n = clean.len() as f64;
    let mean = clean.iter().sum::<f64>() / n;
    let sd = if clean.len() == 1 {
        f64::NAN
    } else {
        (clean.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    let min = clean.iter().copied().fold(f64::INFINITY, f64::min);
    (mean, sd, min)
}

/// Run every variant over every type-compatible bundle. A failed run never
/// aborts the comparison: its statistics are recorded as NaN with a log
/// line on the error stream.
pub fn execute_comparison(
    cfg: &ComparisonConfig,
    bundles: &[SimulationBundle],
    variants: &[Box<dyn SearchAlgorithm>],
    stats: &StatisticsSpec,
    external_root: Option<&Path>,
) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (sim_index, bundle) in bundles.iter().enumerate() {
        for (alg_index, variant) in variants.iter().enumerate() {
            if !variant.data_type().accepts(bundle.data_type) {
                eprintln!(
                    "skipping algorithm {} (`{}`) on simulation {}: data type mismatch",
                    alg_index + 1,
                    variant.description(),
                    sim_index + 1
                );
                continue;
            }
            let mut runs = Vec::with_capacity(bundle.runs.len());
            for (run_index, run) in bundle.runs.iter().enumerate() {
                runs.push(execute_run(
                    cfg,
                    variant.as_ref(),
                    run,
                    sim_index,
                    alg_index,
                    run_index,
                    stats,
                    external_root,
                ));
            }
            cells.push(Cell { sim_index, alg_index, runs });
        }
    }
    cells
}

#[allow(clippy::too_many_arguments)]
fn execute_run(
    cfg: &ComparisonConfig,
    variant: &dyn SearchAlgorithm,
    run: &crate::sim::SimRun,
    sim_index: usize,
    alg_index: usize,
    run_index: usize,
    stats: &StatisticsSpec,
    external_root: Option<&Path>,
) -> RunRecord {
    let input = RunInput {
        data: &run.data,
        true_graph: Some(&run.true_graph),
        sim_index,
        run_index,
        external_root,
    };
    let (estimated, elapsed_seconds) = match variant.external_elapsed_seconds(&input) {
        Some(elapsed) => (variant.search(&input), elapsed),
        None => {
            let start = Instant::now();
            let estimated = variant.search(&input);
            (estimated, start.elapsed().as_secs_f64())
        }
    };
    let comparison =
        comparison_graph_for(variant.comparison_kind(), &run.true_graph, cfg.comparison_override);

    let mut values = HashMap::new();
    let (estimated, failure): (Option<Graph>, Option<String>) = match (estimated, comparison) {
        (Ok(est), Ok(cmp)) => {
            for column in &stats.columns {
                if let ReportColumn::Statistic(s) = column {
                    values.insert(
                        s.abbreviation().to_string(),
                        s.value(&cmp, &est, elapsed_seconds),
                    );
                }
            }
            (Some(est), None)
        }
        (Err(e), _) => (None, Some(e.to_string())),
        (_, Err(e)) => (None, Some(e.to_string())),
    };
    if let Some(reason) = failure {
        eprintln!(
            "run failed: algorithm {} (`{}`), simulation {}, run {}: {reason}",
            alg_index + 1,
            variant.description(),
            sim_index + 1,
            run_index + 1
        );
        for column in &stats.columns {
            if let ReportColumn::Statistic(s) = column {
                values.insert(s.abbreviation().to_string(), f64::NAN);
            }
        }
    }
    RunRecord { estimated, elapsed_seconds, values }
}

/// Aggregate executed cells into ordered report rows.
pub fn rows_from_cells(
    cfg: &ComparisonConfig,
    bundles: &[SimulationBundle],
    cells: &[Cell],
    stats: &StatisticsSpec,
) -> Vec<Row> {
    let mut rows: Vec<Row> = cells
        .iter()
        .map(|cell| {
            let bundle = &bundles[cell.sim_index];
            let mut means = HashMap::new();
            let mut sds = HashMap::new();
            let mut mins = HashMap::new();
            for column in &stats.columns {
                if let ReportColumn::Statistic(s) = column {
                    let abbrev = s.abbreviation();
                    let values: Vec<f64> = cell
                        .runs
                        .iter()
                        .map(|r| r.values.get(abbrev).copied().unwrap_or(f64::NAN))
                        .collect();
                    let (mean, sd, min) = aggregate(&values);
                    means.insert(abbrev.to_string(), mean);
                    sds.insert(abbrev.to_string(), sd);
                    mins.insert(abbrev.to_string(), min);
                }
            }
            let mut parameter_cells = HashMap::new();
            for column in &stats.columns {
                if let ReportColumn::Parameter(name) = column {
                    if let Ok(v) = bundle.source_parameters.get(name) {
                        parameter_cells.insert(name.clone(), v);
                    }
                }
            }
            let p = bundle.runs.first().map(|r| r.data.n_vars()).unwrap_or(0) as f64;
            let pair_count = p * (p - 1.0) / 2.0;
            let normalized: HashMap<String, f64> = means
                .iter()
                .map(|(abbrev, &mean)| {
                    let f = stats
                        .statistic(abbrev)
                        .map(|s| s.norm_value(mean, pair_count))
                        .unwrap_or(0.0);
                    (abbrev.clone(), f)
                })
                .collect();
            Row {
                sim_index: cell.sim_index,
                alg_index: cell.alg_index,
                means,
                sds,
                mins,
                parameter_cells,
                utility: utility(&stats.weights, &normalized),
            }
        })
        .collect();
    if cfg.sort_by_utility {
        rows.sort_by(|a, b| b.utility.partial_cmp(&a.utility).unwrap_or(std::cmp::Ordering::Equal));
    } else {
        rows.sort_by_key(|r| (r.sim_index, r.alg_index));
    }
    rows
}

/// Assemble the header blocks and tables for rendering.
#[allow(clippy::too_many_arguments)]
pub fn build_report_tables(
    cfg: &ComparisonConfig,
    grid: &ParameterGrid,
    global_parameter_names: &[&str],
    bundles: &[SimulationBundle],
    per_simulation_parameters: bool,
    prefer_stored_parameters: bool,
    variants: &[Box<dyn SearchAlgorithm>],
    stats: &StatisticsSpec,
    rows: Vec<Row>,
) -> Result<ReportTables, HarnessError> {
    let legend = stats
        .columns
        .iter()
        .filter_map(|c| match c {
            ReportColumn::Statistic(s) => Some(s.legend_line()),
            ReportColumn::Parameter(_) => None,
        })
        .collect();

    let mut parameter_lines = Vec::new();
    for &name in global_parameter_names {
        // On the load routes the values stored with the simulations win
        // over the supplied grid; in-memory runs reflect the grid itself.
        let stored = if prefer_stored_parameters {
            bundles.first().and_then(|b| b.source_parameters.get_declared(name))
        } else {
            None
        };
        let rendered = match stored {
            Some(v) => v.render_plain(),
            None => grid
                .values(name)?
                .iter()
                .map(|v| v.render_plain())
                .collect::<Vec<_>>()
                .join(", "),
        };
        parameter_lines.push(format!("{name} = {rendered}"));
    }

    let simulation_blocks = bundles
        .iter()
        .map(|b| {
            let mut block = b.description.clone();
            if per_simulation_parameters {
                block.push('\n');
                block.push_str(&b.source_parameters.render_lines());
            }
            block
        })
        .collect();

    let weight_lines = stats
        .columns
        .iter()
        .filter_map(|c| match c {
            ReportColumn::Statistic(s) => {
                let w = stats.weights.get(s.abbreviation()).copied().unwrap_or(0.0);
                (w > 0.0).then(|| (w, s.abbreviation().to_string()))
            }
            ReportColumn::Parameter(_) => None,
        })
        .collect();

    let latent_note = bundles.iter().any(|b| {
        b.source_parameters
            .get_declared("numLatents")
            .map(|v| v.as_f64() > 0.0)
            .unwrap_or(false)
    });

    Ok(ReportTables {
        legend,
        parameter_lines,
        simulation_blocks,
        algorithm_descriptions: variants.iter().map(|v| v.description().to_string()).collect(),
        weight_lines,
        column_labels: stats.columns.iter().map(ReportColumn::label).collect(),
        rows,
        show_algorithm_indices: cfg.show_algorithm_indices,
        show_simulation_indices: cfg.show_simulation_indices,
        show_utilities: cfg.show_utilities,
        tab_delimited: cfg.tab_delimited,
        multiple_simulations: bundles.len() > 1,
        latent_note,
    })
}
