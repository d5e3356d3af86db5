//! Save/compare flows over the on-disk layout:
//!
//! ```text
//! <root>/save1/graph/graph.1.txt ... graph.<numRuns>.txt
//! <root>/save1/data/data.1.txt  ... data.<numRuns>.txt
//! <root>/save1/parameters.txt
//! <root>/save1/description.txt
//! <root>/save2/...
//! ```
//!
//! plus `Comparison.txt` written under the output root.

use super::{
    build_report_tables, execute_comparison, expand_points, render_report, rows_from_cells,
    ComparisonConfig, HarnessError, Row, StatisticsSpec,
};
use crate::data::{save_tabular, DataType};
use crate::graph::render_graph_text;
use crate::params::ParameterGrid;
use crate::search::SearchAlgorithm;
use crate::sim::{self, load_from_directory, make_simulation, SimulationStyle};
use std::fs;
use std::path::{Path, PathBuf};

pub struct ComparisonOutcome {
    pub report: String,
    pub report_path: PathBuf,
    pub rows: Vec<Row>,
}

fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|source| HarnessError::Io { path: parent.to_path_buf(), source })?;
    }
    fs::write(path, text).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}

pub fn write_report(out_root: &Path, report: &str) -> Result<PathBuf, HarnessError> {
    let path = out_root.join("Comparison.txt");
    write_text(&path, report)?;
    Ok(path)
}

fn data_type_tag(t: DataType) -> &'static str {
    match t {
        DataType::Continuous => "continuous",
        DataType::Discrete => "discrete",
    }
}

/// Simulate one bundle per grid point per style and write everything under
/// `root`, directories numbered `save1..` in grid order across styles.
pub fn save_to_files(
    root: &Path,
    styles: &[Box<dyn SimulationStyle>],
    grid: &ParameterGrid,
    master_seed: u64,
) -> Result<(), HarnessError> {
    let mut sim_index = 0usize;
    for style in styles {
        for point in expand_points(grid, style.parameter_names())? {
            let bundle = make_simulation(style.as_ref(), &point, master_seed, sim_index)?;
            let dir = sim::save_dir(root, sim_index);
            for (run_index, run) in bundle.runs.iter().enumerate() {
                write_text(&sim::graph_file(&dir, run_index), &render_graph_text(&run.true_graph))?;
                write_text(&sim::data_file(&dir, run_index), &save_tabular(&run.data))?;
            }
            write_text(&sim::parameters_file(&dir), &bundle.source_parameters.render_lines())?;
            write_text(
                &sim::description_file(&dir),
                &format!("{}\n{}\n", style.description(), data_type_tag(style.data_type())),
            )?;
            sim_index += 1;
        }
    }
    Ok(())
}

/// Build every bundle in memory (same seed derivation as `save_to_files`)
/// and run the comparison without touching the data directories. The
/// report lands in `out_root/Comparison.txt`.
pub fn compare_from_simulations(
    out_root: &Path,
    styles: &[Box<dyn SimulationStyle>],
    variants: &[Box<dyn SearchAlgorithm>],
    stats: &StatisticsSpec,
    grid: &ParameterGrid,
    cfg: &ComparisonConfig,
) -> Result<ComparisonOutcome, HarnessError> {
    let mut bundles = Vec::new();
    let mut global_names: Vec<&str> = Vec::new();
    let mut sim_index = 0usize;
    for style in styles {
        for name in style.parameter_names() {
            if !global_names.contains(name) {
                global_names.push(name);
            }
        }
        for point in expand_points(grid, style.parameter_names())? {
            bundles.push(make_simulation(style.as_ref(), &point, cfg.master_seed, sim_index)?);
            sim_index += 1;
        }
    }
    let cells = execute_comparison(cfg, &bundles, variants, stats, None);
    let rows = rows_from_cells(cfg, &bundles, &cells, stats);
    let per_sim_parameters = bundles.len() > 1;
    let tables = build_report_tables(
        cfg,
        grid,
        &global_names,
        &bundles,
        per_sim_parameters,
        false,
        variants,
        stats,
        rows,
    )?;
    let report = render_report(&tables);
    let report_path = write_report(out_root, &report)?;
    Ok(ComparisonOutcome { report, report_path, rows: tables.rows })
}

/// Load previously saved bundles from `root`, run the comparison, and write
/// `root/Comparison.txt`. Parameters stored with the simulations override
/// whatever the supplied grid says.
pub fn compare_from_files(
    root: &Path,
    variants: &[Box<dyn SearchAlgorithm>],
    stats: &StatisticsSpec,
    grid: &ParameterGrid,
    cfg: &ComparisonConfig,
) -> Result<ComparisonOutcome, HarnessError> {
    let bundles = load_from_directory(root)?;
    if bundles.is_empty() {
        return Err(HarnessError::EmptyRoot(root.to_path_buf()));
    }
    let cells = execute_comparison(cfg, &bundles, variants, stats, None);
    let rows = rows_from_cells(cfg, &bundles, &cells, stats);
    let tables =
        build_report_tables(cfg, grid, &["numRuns"], &bundles, true, true, variants, stats, rows)?;
    let report = render_report(&tables);
    let report_path = write_report(root, &report)?;
    Ok(ComparisonOutcome { report, report_path, rows: tables.rows })
}

/// Compare externally produced results: true graphs and data come from the
/// saved bundles under `data_root`, estimated graphs and elapsed times from
/// its `results/` and `elapsed/` trees. The report lands under `out_root`.
pub fn compare_external(
    data_root: &Path,
    out_root: &Path,
    variants: &[Box<dyn SearchAlgorithm>],
    stats: &StatisticsSpec,
    grid: &ParameterGrid,
    cfg: &ComparisonConfig,
) -> Result<ComparisonOutcome, HarnessError> {
    let bundles = load_from_directory(data_root)?;
    if bundles.is_empty() {
        return Err(HarnessError::EmptyRoot(data_root.to_path_buf()));
    }
    let cells = execute_comparison(cfg, &bundles, variants, stats, Some(data_root));
    let rows = rows_from_cells(cfg, &bundles, &cells, stats);
    let tables =
        build_report_tables(cfg, grid, &["numRuns"], &bundles, true, true, variants, stats, rows)?;
    let report = render_report(&tables);
    let report_path = write_report(out_root, &report)?;
    Ok(ComparisonOutcome { report, report_path, rows: tables.rows })
}
