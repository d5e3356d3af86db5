//! Stratified contingency tabulation for discrete variables.

use super::{DataError, DataSet};
use std::collections::BTreeMap;

/// One contingency table per observed joint value of the conditioning set.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    /// Category indices of the conditioning variables, in the order given.
    pub key: Vec<usize>,
    /// `categories(x)` rows by `categories(y)` columns of counts.
    pub counts: Vec<Vec<u64>>,
}

impl Stratum {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// Cross-tabulate `x` against `y` within each observed stratum of `z`.
/// Tables are dimensioned by the declared category counts; strata appear in
/// sorted key order.
pub fn cross_tabulate(
    d: &DataSet,
    x: usize,
    y: usize,
    z: &[usize],
) -> Result<Vec<Stratum>, DataError> {
    let xs = d.discrete(x)?;
    let ys = d.discrete(y)?;
    let zcols: Vec<&[usize]> = z.iter().map(|&j| d.discrete(j)).collect::<Result<_, _>>()?;
    let (rows, cols) = (d.categories(x)?, d.categories(y)?);
    let mut strata: BTreeMap<Vec<usize>, Vec<Vec<u64>>> = BTreeMap::new();
    for r in 0..d.n_rows() {
        let key: Vec<usize> = zcols.iter().map(|c| c[r]).collect();
        let table = strata
            .entry(key)
            .or_insert_with(|| vec![vec![0u64; cols]; rows]);
        table[xs[r]][ys[r]] += 1;
    }
    Ok(strata
        .into_iter()
        .map(|(key, counts)| Stratum { key, counts })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Column, VarKind, Variable};

    fn discrete_var(name: &str, categories: usize) -> Variable {
        Variable { name: name.to_string(), kind: VarKind::Discrete { categories } }
    }

    fn six_row_dataset() -> DataSet {
        // x: 0 0 1 1 0 1 / y: 0 1 0 1 1 1 / z: 0 0 0 1 1 1
        DataSet::from_columns(
            vec![discrete_var("x", 2), discrete_var("y", 2), discrete_var("z", 2)],
            vec![
                Column::Discrete(vec![0, 0, 1, 1, 0, 1]),
                Column::Discrete(vec![0, 1, 0, 1, 1, 1]),
                Column::Discrete(vec![0, 0, 0, 1, 1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn no_conditioning_gives_one_raw_table() {
        let d = six_row_dataset();
        let strata = cross_tabulate(&d, 0, 1, &[]).unwrap();
        assert_eq!(strata.len(), 1);
        assert_eq!(strata[0].key, Vec::<usize>::new());
        assert_eq!(strata[0].total(), 6);
    }

    #[test]
    fn binary_conditioning_splits_the_rows() {
        let d = six_row_dataset();
        let strata = cross_tabulate(&d, 0, 1, &[2]).unwrap();
        assert_eq!(strata.len(), 2);
        assert_eq!(strata[0].key, vec![0]);
        assert_eq!(strata[1].key, vec![1]);
        assert_eq!(strata.iter().map(Stratum::total).sum::<u64>(), 6);
    }

    #[test]
    fn counts_match_a_hand_tally() {
        let d = six_row_dataset();
        let strata = cross_tabulate(&d, 0, 1, &[2]).unwrap();
        // z = 0 rows: (0,0), (0,1), (1,0)
        assert_eq!(strata[0].counts, vec![vec![1, 1], vec![1, 0]]);
        // z = 1 rows: (1,1), (0,1), (1,1)
        assert_eq!(strata[1].counts, vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn continuous_variable_is_rejected() {
        let d = DataSet::from_columns(
            vec![
                discrete_var("x", 2),
                Variable { name: "c".to_string(), kind: VarKind::Continuous },
            ],
            vec![Column::Discrete(vec![0, 1]), Column::Continuous(vec![0.5, 1.5])],
        )
        .unwrap();
        assert!(matches!(cross_tabulate(&d, 0, 1, &[]), Err(DataError::NotDiscrete(_))));
    }

    #[test]
    fn table_dimensions_follow_declared_categories() {
        let d = DataSet::from_columns(
            vec![discrete_var("x", 3), discrete_var("y", 4)],
            vec![Column::Discrete(vec![0, 1]), Column::Discrete(vec![0, 1])],
        )
        .unwrap();
        let strata = cross_tabulate(&d, 0, 1, &[]).unwrap();
        assert_eq!(strata[0].counts.len(), 3);
        assert_eq!(strata[0].counts[0].len(), 4);
    }
}
