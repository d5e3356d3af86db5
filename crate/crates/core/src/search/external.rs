//! Loaders for estimated graphs and elapsed times produced by other tools.
//!
//! Layout: graphs at `<root>/results/<dir>/<simIndex+1>/graph.<run>.txt`
//! and elapsed times at `<root>/elapsed/<dir>/<simIndex+1>/graph.<run>.txt`,
//! with 1-based run numbering. An elapsed file holds a single integer of
//! milliseconds on its first line; anything unreadable maps to the -99
//! seconds sentinel.

use super::SearchError;
use crate::graph::{parse_graph_text, Graph};
use std::fs;
use std::path::{Path, PathBuf};

pub const ELAPSED_UNAVAILABLE_SECONDS: f64 = -99.0;

pub fn results_graph_path(root: &Path, dir: &str, sim_index: usize, run_index: usize) -> PathBuf {
    root.join("results")
        .join(dir)
        .join((sim_index + 1).to_string())
        .join(format!("graph.{}.txt", run_index + 1))
}

pub fn elapsed_file_path(root: &Path, dir: &str, sim_index: usize, run_index: usize) -> PathBuf {
    root.join("elapsed")
        .join(dir)
        .join((sim_index + 1).to_string())
        .join(format!("graph.{}.txt", run_index + 1))
}

fn read_result(path: &Path) -> Result<String, SearchError> {
    if !path.is_file() {
        return Err(SearchError::MissingResult(path.to_path_buf()));
    }
    fs::read_to_string(path).map_err(|source| SearchError::Io { path: path.to_path_buf(), source })
}

/// Load a result in the native graph text format.
pub fn load_native_result(path: &Path) -> Result<Graph, SearchError> {
    Ok(parse_graph_text(&read_result(path)?)?)
}

/// Load a result in the adjacency-matrix format: a header row of variable
/// names, then a square 0/1 matrix. Entry pairs decode as
/// `m[i][j] = m[j][i] = 1` undirected, `m[i][j] = 1, m[j][i] = 0` a
/// directed edge j -> i, both zero no edge.
pub fn load_matrix_result(path: &Path) -> Result<Graph, SearchError> {
    let text = read_result(path)?;
    let bad = |reason: String| SearchError::MatrixFormat { path: path.to_path_buf(), reason };
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file".to_string()))?;
    let names: Vec<&str> = header.split('\t').map(str::trim).collect();
    let p = names.len();
    let mut matrix: Vec<Vec<u8>> = Vec::with_capacity(p);
    for line in lines {
        let row = line
            .split('\t')
            .map(|cell| match cell.trim() {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(bad(format!("entry `{other}` is outside {{0, 1}}"))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if row.len() != p {
            return Err(bad(format!("row of width {} in a {p}-column matrix", row.len())));
        }
        matrix.push(row);
    }
    if matrix.len() != p {
        return Err(bad(format!("{} rows for {p} columns", matrix.len())));
    }
    let mut graph = Graph::new(names)?;
    #[allow(clippy::needless_range_loop)]
    for i in 0..p {
        for j in 0..p {
            if i == j {
                continue;
            }
            let g = matrix[i][j];
            let h = matrix[j][i];
            if g == 1 && h == 1 && !graph.is_adjacent(i, j) {
                graph.add_undirected(i, j)?;
            } else if g == 1 && h == 0 {
                graph.add_directed(j, i)?;
            }
        }
    }
    Ok(graph)
}

/// First line parsed as integer milliseconds, converted to seconds. A
/// missing file or an unparseable line yields the sentinel.
pub fn elapsed_seconds_from_file(path: &Path) -> f64 {
    match fs::read_to_string(path) {
        Ok(text) => match text.lines().next().and_then(|l| l.trim().parse::<i64>().ok()) {
            Some(millis) => millis as f64 / 1000.0,
            None => ELAPSED_UNAVAILABLE_SECONDS,
        },
        Err(_) => ELAPSED_UNAVAILABLE_SECONDS,
    }
}
