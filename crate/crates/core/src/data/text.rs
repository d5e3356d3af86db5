//! Tab-delimited data files: variable names on the first line, one row per
//! line, discrete categories as base-10 integers, continuous values in
//! shortest round-trip decimal form.

use super::{Column, DataError, DataSet, VarKind, Variable};

/// Distinct-count ceiling for inferring a discrete column when no types are
/// declared.
const DISCRETE_INFERENCE_LIMIT: usize = 50;

pub fn save_tabular(d: &DataSet) -> String {
    let mut out = String::new();
    out.push_str(&d.names().join("\t"));
    out.push('\n');
    for r in 0..d.n_rows() {
        let mut first = true;
        for c in 0..d.n_vars() {
            if !first {
                out.push('\t');
            }
            first = false;
            match d.column(c) {
                Column::Continuous(v) => out.push_str(&format!("{}", v[r])),
                Column::Discrete(v) => out.push_str(&format!("{}", v[r])),
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a tab-delimited file. With `declared` types each column is read as
/// stated; otherwise a column is discrete exactly when every cell is a
/// non-negative integer with at most 50 distinct values, and continuous
/// otherwise.
pub fn load_tabular(text: &str, declared: Option<&[VarKind]>) -> Result<DataSet, DataError> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    let header = lines.next().ok_or_else(|| DataError::Format("empty file".to_string()))?;
    let names: Vec<&str> = header.split('\t').collect();
    if names.iter().any(|n| n.trim().is_empty()) {
        return Err(DataError::Format("blank variable name in header".to_string()));
    }
    if let Some(kinds) = declared {
        if kinds.len() != names.len() {
            return Err(DataError::Format(format!(
                "{} declared types for {} columns",
                kinds.len(),
                names.len()
            )));
        }
    }
    let p = names.len();
    let mut cells: Vec<Vec<&str>> = vec![Vec::new(); p];
    for (row_idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != p {
            return Err(DataError::RaggedRow {
                row: row_idx + 1,
                expected: p,
                found: fields.len(),
            });
        }
        for (c, f) in fields.iter().enumerate() {
            cells[c].push(f);
        }
    }

    let mut variables = Vec::with_capacity(p);
    let mut columns = Vec::with_capacity(p);
    for (c, name) in names.iter().enumerate() {
        let kind = match declared {
            Some(kinds) => kinds[c],
            None => infer_kind(&cells[c]),
        };
        match kind {
            VarKind::Continuous => {
                let mut v = Vec::with_capacity(cells[c].len());
                for (r, cell) in cells[c].iter().enumerate() {
                    let parsed = cell.trim().parse::<f64>().map_err(|_| DataError::BadCell {
                        row: r + 1,
                        column: name.to_string(),
                        value: cell.to_string(),
                    })?;
                    v.push(parsed);
                }
                variables.push(Variable { name: name.to_string(), kind });
                columns.push(Column::Continuous(v));
            }
            VarKind::Discrete { .. } => {
                let mut v = Vec::with_capacity(cells[c].len());
                for (r, cell) in cells[c].iter().enumerate() {
                    let parsed = cell.trim().parse::<usize>().map_err(|_| DataError::BadCell {
                        row: r + 1,
                        column: name.to_string(),
                        value: cell.to_string(),
                    })?;
                    v.push(parsed);
                }
                variables.push(Variable { name: name.to_string(), kind });
                columns.push(Column::Discrete(v));
            }
        }
    }
    DataSet::from_columns(variables, columns)
}

fn infer_kind(cells: &[&str]) -> VarKind {
    let mut distinct = std::collections::BTreeSet::new();
    let mut max = 0usize;
    for cell in cells {
        match cell.trim().parse::<usize>() {
            Ok(v) => {
                distinct.insert(v);
                max = max.max(v);
                if distinct.len() > DISCRETE_INFERENCE_LIMIT {
                    return VarKind::Continuous;
                }
            }
            Err(_) => return VarKind::Continuous,
        }
    }
    if cells.is_empty() {
        return VarKind::Continuous;
    }
    VarKind::Discrete { categories: max + 1 }
}
