//! Tabular datasets: typed columns, correlation machinery, contingency
//! tabulation, and the tab-delimited file format.

use std::collections::HashMap;
use thiserror::Error;

mod corr;
mod tabulate;
mod text;

pub use corr::{correlation_matrix, partial_correlation, CorrelationMatrix};
pub use tabulate::{cross_tabulate, Stratum};
pub use text::{load_tabular, save_tabular};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is not continuous")]
    NotContinuous(String),
    #[error("variable `{0}` is not discrete")]
    NotDiscrete(String),
    #[error("column `{0}` has zero variance")]
    ZeroVariance(String),
    #[error("variable `{name}` value {value} is outside its {categories} categories")]
    CategoryRange { name: String, value: usize, categories: usize },
    #[error("column length mismatch for `{0}`")]
    ColumnLength(String),
    #[error("need at least {needed} rows, found {found}")]
    TooFewRows { needed: usize, found: usize },
    #[error("conditioning set overlaps x or y")]
    ConditioningOverlap,
    #[error("submatrix over the conditioning set is singular")]
    SingularSubmatrix,
    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("row {row}, column `{column}`: cannot parse `{value}`")]
    BadCell { row: usize, column: String, value: String },
    #[error("data file: {0}")]
    Format(String),
}

/// Overall column type of a dataset; mixed datasets are out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataType {
    Continuous,
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Discrete { categories: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Continuous(Vec<f64>),
    Discrete(Vec<usize>),
}

impl Column {
    fn len(&self) -> usize {
        match self {
            Column::Continuous(v) => v.len(),
            Column::Discrete(v) => v.len(),
        }
    }
}

/// N rows over an ordered list of typed variables. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    variables: Vec<Variable>,
    columns: Vec<Column>,
    rows: usize,
    by_name: HashMap<String, usize>,
}

impl DataSet {
    pub fn from_columns(variables: Vec<Variable>, columns: Vec<Column>) -> Result<Self, DataError> {
        assert_eq!(variables.len(), columns.len(), "one column per variable");
        let rows = columns.first().map(Column::len).unwrap_or(0);
        let mut by_name = HashMap::with_capacity(variables.len());
        for (i, (var, col)) in variables.iter().zip(&columns).enumerate() {
            if by_name.insert(var.name.clone(), i).is_some() {
                return Err(DataError::DuplicateVariable(var.name.clone()));
            }
            if col.len() != rows {
                return Err(DataError::ColumnLength(var.name.clone()));
            }
            match (&var.kind, col) {
                (VarKind::Continuous, Column::Continuous(_)) => {}
                (VarKind::Discrete { categories }, Column::Discrete(values)) => {
                    if let Some(&bad) = values.iter().find(|&&v| v >= *categories) {
                        return Err(DataError::CategoryRange {
                            name: var.name.clone(),
                            value: bad,
                            categories: *categories,
                        });
                    }
                }
                _ => {
                    return Err(match var.kind {
                        VarKind::Continuous => DataError::NotContinuous(var.name.clone()),
                        VarKind::Discrete { .. } => DataError::NotDiscrete(var.name.clone()),
                    })
                }
            }
        }
        Ok(DataSet { variables, columns, rows, by_name })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &Variable {
        &self.variables[i]
    }

    pub fn names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn require_index(&self, name: &str) -> Result<usize, DataError> {
        self.index_of(name).ok_or_else(|| DataError::UnknownVariable(name.to_string()))
    }

    pub fn column(&self, i: usize) -> &Column {
        &self.columns[i]
    }

    pub fn continuous(&self, i: usize) -> Result<&[f64], DataError> {
        match &self.columns[i] {
            Column::Continuous(v) => Ok(v),
            Column::Discrete(_) => Err(DataError::NotContinuous(self.variables[i].name.clone())),
        }
    }

    pub fn discrete(&self, i: usize) -> Result<&[usize], DataError> {
        match &self.columns[i] {
            Column::Discrete(v) => Ok(v),
            Column::Continuous(_) => Err(DataError::NotDiscrete(self.variables[i].name.clone())),
        }
    }

    pub fn categories(&self, i: usize) -> Result<usize, DataError> {
        match self.variables[i].kind {
            VarKind::Discrete { categories } => Ok(categories),
            VarKind::Continuous => Err(DataError::NotDiscrete(self.variables[i].name.clone())),
        }
    }

    pub fn all_continuous(&self) -> bool {
        self.variables.iter().all(|v| v.kind == VarKind::Continuous)
    }

    pub fn all_discrete(&self) -> bool {
        self.variables.iter().all(|v| matches!(v.kind, VarKind::Discrete { .. }))
    }

    /// A copy with columns rearranged to `order` (a permutation of 0..p).
    pub fn reorder_columns(&self, order: &[usize]) -> DataSet {
        assert_eq!(order.len(), self.n_vars(), "order must be a full permutation");
        let variables = order.iter().map(|&i| self.variables[i].clone()).collect();
        let columns = order.iter().map(|&i| self.columns[i].clone()).collect();
        DataSet::from_columns(variables, columns).expect("permuting valid columns stays valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toy_continuous() -> DataSet {
        DataSet::from_columns(
            vec![
                Variable { name: "A".to_string(), kind: VarKind::Continuous },
                Variable { name: "B".to_string(), kind: VarKind::Continuous },
            ],
            vec![
                Column::Continuous(vec![1.0, 2.0, 3.0, 4.0]),
                Column::Continuous(vec![2.0, 4.0, 6.0, 8.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_shapes_and_ranges() {
        let vars = vec![Variable { name: "D".to_string(), kind: VarKind::Discrete { categories: 2 } }];
        let bad = DataSet::from_columns(vars.clone(), vec![Column::Discrete(vec![0, 2])]);
        assert!(matches!(bad, Err(DataError::CategoryRange { .. })));
        let ok = DataSet::from_columns(vars, vec![Column::Discrete(vec![0, 1])]).unwrap();
        assert_eq!(ok.n_rows(), 2);
        assert_eq!(ok.categories(0).unwrap(), 2);
    }

    #[test]
    fn duplicate_names_rejected() {
        let vars = vec![
            Variable { name: "A".to_string(), kind: VarKind::Continuous },
            Variable { name: "A".to_string(), kind: VarKind::Continuous },
        ];
        let cols = vec![Column::Continuous(vec![]), Column::Continuous(vec![])];
        assert!(matches!(
            DataSet::from_columns(vars, cols),
            Err(DataError::DuplicateVariable(_))
        ));
    }

    #[test]
    fn reorder_permutes_both_names_and_values() {
        let d = toy_continuous();
        let r = d.reorder_columns(&[1, 0]);
        assert_eq!(r.variable(0).name, "B");
        assert_eq!(r.continuous(0).unwrap(), &[2.0, 4.0, 6.0, 8.0]);
        assert_eq!(r.continuous(1).unwrap(), &[1.0, 2.0, 3.0, 4.0]);
    }
}
