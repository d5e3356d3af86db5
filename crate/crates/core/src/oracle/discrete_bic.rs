//! BIC score for multinomial models over discrete data.

use super::{LocalScore, OracleError};
use crate::data::DataSet;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

pub struct DiscreteBicScore<'a> {
    data: &'a DataSet,
    penalty: f64,
    cache: RefCell<HashMap<(usize, Vec<usize>), f64>>,
}

impl<'a> DiscreteBicScore<'a> {
    pub fn new(data: &'a DataSet, penalty_discount: f64) -> Self {
        DiscreteBicScore { data, penalty: penalty_discount, cache: RefCell::new(HashMap::new()) }
    }
}

impl LocalScore for DiscreteBicScore<'_> {
    /// `2 * sum over parent strata and child cells of n ln(n / n_stratum)`
    /// minus `penalty * q * (k - 1) * ln N`, with `k` the categories of `y`
    /// and `q` the product of the parents' declared category counts. Empty
    /// cells contribute nothing.
    fn local(&self, y: usize, parents: &[usize]) -> Result<f64, OracleError> {
        let mut key: Vec<usize> = parents.to_vec();
        key.sort_unstable();
        if let Some(&hit) = self.cache.borrow().get(&(y, key.clone())) {
            return Ok(hit);
        }
        let ys = self.data.discrete(y)?;
        let k = self.data.categories(y)?;
        let parent_cols: Vec<&[usize]> =
            key.iter().map(|&p| self.data.discrete(p)).collect::<Result<_, _>>()?;
        let mut q = 1f64;
        for &p in &key {
            q *= self.data.categories(p)? as f64;
        }
        let mut strata: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
        for r in 0..self.data.n_rows() {
            let config: Vec<usize> = parent_cols.iter().map(|c| c[r]).collect();
            strata.entry(config).or_insert_with(|| vec![0u64; k])[ys[r]] += 1;
        }
        let mut log_lik_2 = 0.0f64;
        for counts in strata.values() {
            let stratum_n: u64 = counts.iter().sum();
            for &c in counts {
                if c > 0 {
                    log_lik_2 += 2.0 * c as f64 * (c as f64 / stratum_n as f64).ln();
                }
            }
        }
        let n = self.data.n_rows() as f64;
        let score = log_lik_2 - self.penalty * q * (k as f64 - 1.0) * n.ln();
        self.cache.borrow_mut().insert((y, key), score);
        Ok(score)
    }
}

/// One-shot convenience over [`DiscreteBicScore`].
pub fn discrete_bic_local(
    d: &DataSet,
    y: usize,
    parents: &[usize],
    penalty_discount: f64,
) -> Result<f64, OracleError> {
    DiscreteBicScore::new(d, penalty_discount).local(y, parents)
}
