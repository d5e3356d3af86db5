//! Fixed-format text rendering of comparison results.

use super::{ReportTables, Row};
use crate::params::ParamValue;
use chrono::Utc;

/// Render the full report: timestamp, legend, parameter and simulation
/// blocks, algorithm list, weighting block, then the AVERAGE, STANDARD
/// DEVIATIONS, and WORST CASE tables (identical row order in all three).
pub fn render_report(tables: &ReportTables) -> String {
    let mut out = String::new();
    out.push_str(&Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string());
    out.push_str("\n\n");

    out.push_str("Statistics:\n\n");
    for line in &tables.legend {
        out.push_str(line);
        out.push('\n');
    }
    out.push('\n');

    out.push_str("Parameters:\n\n");
    for line in &tables.parameter_lines {
        out.push_str(line);
        out.push('\n');
    }
    out.push('\n');

    out.push_str("Simulation:\n\n");
    if tables.simulation_blocks.len() == 1 {
        out.push_str(tables.simulation_blocks[0].trim_end_matches('\n'));
        out.push_str("\n\n");
    } else {
        for (i, block) in tables.simulation_blocks.iter().enumerate() {
            out.push_str(&format!("Simulation {}:\n", i + 1));
            out.push_str(block.trim_end_matches('\n'));
            out.push_str("\n\n");
        }
    }

    if tables.latent_note {
        out.push_str(
            "Note: latent variables are present; estimates are compared to the pattern \
             of the true DAG restricted to its measured nodes.\n\n",
        );
    }

    out.push_str("Algorithms:\n\n");
    for (i, desc) in tables.algorithm_descriptions.iter().enumerate() {
        out.push_str(&format!("{}. {desc}\n", i + 1));
    }
    out.push('\n');

    if !tables.weight_lines.is_empty() {
        out.push_str("Weighting of statistics:\n\n");
        out.push_str("U = \n");
        for (weight, abbrev) in &tables.weight_lines {
            out.push_str(&format!("    {} * f({abbrev})\n", ParamValue::Real(*weight).render_description()));
        }
        out.push('\n');
        out.push_str("Note that f for each statistic is a function that maps the statistic to the \n");
        out.push_str("interval [0, 1], with higher being better.\n\n");
    }

    out.push('\n');
    for (title, pick) in [
        ("AVERAGE STATISTICS", CellKind::Mean),
        ("STANDARD DEVIATIONS", CellKind::Sd),
        ("WORST CASE", CellKind::Min),
    ] {
        out.push_str(title);
        out.push_str("\n\nAll edges\n\n");
        out.push_str(&render_table(tables, pick));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy)]
enum CellKind {
    Mean,
    Sd,
    Min,
}

fn row_value(row: &Row, label: &str, kind: CellKind) -> Option<f64> {
    let map = match kind {
        CellKind::Mean => &row.means,
        CellKind::Sd => &row.sds,
        CellKind::Min => &row.mins,
    };
    map.get(label).copied()
}

fn format_cell(row: &Row, label: &str, kind: CellKind) -> String {
    match row_value(row, label, kind) {
        Some(v) => format!("{v:.3}"),
        None => match row.parameter_cells.get(label) {
            Some(p) => p.render_plain(),
            None => "NaN".to_string(),
        },
    }
}

fn render_table(tables: &ReportTables, kind: CellKind) -> String {
    let mut headers: Vec<String> = Vec::new();
    if tables.show_algorithm_indices {
        headers.push("Alg".to_string());
    }
    let show_sim = tables.show_simulation_indices && tables.multiple_simulations;
    if show_sim {
        headers.push("Sim".to_string());
    }
    headers.extend(tables.column_labels.iter().cloned());
    if tables.show_utilities {
        headers.push("U".to_string());
    }

    let mut body: Vec<Vec<String>> = Vec::with_capacity(tables.rows.len());
    for row in &tables.rows {
        let mut cells = Vec::with_capacity(headers.len());
        if tables.show_algorithm_indices {
            cells.push((row.alg_index + 1).to_string());
        }
        if show_sim {
            cells.push((row.sim_index + 1).to_string());
        }
        for label in &tables.column_labels {
            cells.push(format_cell(row, label, kind));
        }
        if tables.show_utilities {
            // The same mean-based utility repeats in all three tables.
            cells.push(format!("{:.3}", row.utility));
        }
        body.push(cells);
    }

    let mut out = String::new();
    if tables.tab_delimited {
        out.push_str(&headers.join("\t"));
        out.push('\n');
        for cells in &body {
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        return out;
    }
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(c, h)| body.iter().map(|row| row[c].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let mut line = String::new();
    for (c, h) in headers.iter().enumerate() {
        line.push_str("  ");
        line.push_str(&format!("{h:>width$}", width = widths[c]));
    }
    out.push_str(&line);
    out.push('\n');
    for cells in &body {
        let mut line = String::new();
        for (c, cell) in cells.iter().enumerate() {
            line.push_str("  ");
            line.push_str(&format!("{cell:>width$}", width = widths[c]));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn toy_tables(show_utilities: bool, tab_delimited: bool) -> ReportTables {
        let mut means = HashMap::new();
        means.insert("AP".to_string(), 0.933);
        let mut sds = HashMap::new();
        sds.insert("AP".to_string(), f64::NAN);
        let mut mins = HashMap::new();
        mins.insert("AP".to_string(), 0.933);
        ReportTables {
            legend: vec!["AP = Adjacency Precision".to_string()],
            parameter_lines: vec!["numRuns = 1".to_string()],
            simulation_blocks: vec!["Linear, Gaussian SEM simulation".to_string()],
            algorithm_descriptions: vec!["PC (\"Peter and Clark\") using Fisher Z test".to_string()],
            weight_lines: vec![(1.0, "AP".to_string())],
            column_labels: vec!["AP".to_string()],
            rows: vec![Row {
                sim_index: 0,
                alg_index: 0,
                means,
                sds,
                mins,
                parameter_cells: HashMap::new(),
                utility: 0.933,
            }],
            show_algorithm_indices: true,
            show_simulation_indices: true,
            show_utilities,
            tab_delimited,
            multiple_simulations: false,
            latent_note: false,
        }
    }

    #[test]
    fn single_run_deviations_print_nan() {
        let text = render_report(&toy_tables(false, false));
        let sd_section = text.split("STANDARD DEVIATIONS").nth(1).unwrap();
        assert!(sd_section.contains("NaN"));
    }

    #[test]
    fn utility_column_appears_only_when_requested() {
        let with = render_report(&toy_tables(true, false));
        assert!(with.contains("      U\n") || with.contains("  U\n"));
        let without = render_report(&toy_tables(false, false));
        let header_line = without
            .lines()
            .find(|l| l.contains("Alg") && l.contains("AP"))
            .unwrap();
        assert!(!header_line.ends_with('U'));
    }

    #[test]
    fn tab_delimited_tables_use_single_tabs() {
        let text = render_report(&toy_tables(true, true));
        assert!(text.contains("Alg\tAP\tU\n"));
        assert!(text.contains("1\t0.933\t0.933\n"));
    }

    #[test]
    fn sim_column_is_hidden_for_a_single_simulation() {
        let text = render_report(&toy_tables(false, false));
        let header_line = text.lines().find(|l| l.contains("Alg")).unwrap();
        assert!(!header_line.contains("Sim"));
    }

    #[test]
    fn weighting_block_lists_weights_in_column_order() {
        let text = render_report(&toy_tables(true, false));
        assert!(text.contains("Weighting of statistics:\n\nU = \n    1.0 * f(AP)\n"));
        assert!(text.contains("maps the statistic to the \ninterval [0, 1]"));
    }
}
