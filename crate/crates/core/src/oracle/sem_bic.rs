//! BIC score for linear Gaussian models, computed from the maximum
//! likelihood covariance matrix.

use super::{LocalScore, OracleError};
use crate::data::{DataError, DataSet};
use nalgebra::{DMatrix, DVector};
use std::cell::RefCell;
use std::collections::HashMap;

pub struct SemBicScore {
    cov: DMatrix<f64>,
    n: usize,
    penalty: f64,
    names: Vec<String>,
    cache: RefCell<HashMap<(usize, Vec<usize>), f64>>,
}

impl SemBicScore {
    pub fn new(d: &DataSet, penalty_discount: f64) -> Result<Self, OracleError> {
        let n = d.n_rows();
        if n < 2 {
            return Err(DataError::TooFewRows { needed: 2, found: n }.into());
        }
        let p = d.n_vars();
        let mut centered: Vec<Vec<f64>> = Vec::with_capacity(p);
        for j in 0..p {
            let col = d.continuous(j)?;
            let mean = col.iter().sum::<f64>() / n as f64;
            centered.push(col.iter().map(|v| v - mean).collect());
        }
        let mut cov = DMatrix::zeros(p, p);
        for i in 0..p {
            for j in i..p {
                let dot: f64 =
                    centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum::<f64>() / n as f64;
                cov[(i, j)] = dot;
                cov[(j, i)] = dot;
            }
        }
        Ok(SemBicScore {
            cov,
            n,
            penalty: penalty_discount,
            names: d.names(),
            cache: RefCell::new(HashMap::new()),
        })
    }

    fn residual_variance(&self, y: usize, parents: &[usize]) -> Result<f64, OracleError> {
        if parents.is_empty() {
            return Ok(self.cov[(y, y)]);
        }
        let k = parents.len();
        let cpp = DMatrix::from_fn(k, k, |i, j| self.cov[(parents[i], parents[j])]);
        let cpy = DVector::from_fn(k, |i, _| self.cov[(parents[i], y)]);
        let chol = cpp
            .cholesky()
            .ok_or_else(|| OracleError::RankDeficient(self.names[y].clone()))?;
        let beta = chol.solve(&cpy);
        Ok(self.cov[(y, y)] - cpy.dot(&beta))
    }
}

impl LocalScore for SemBicScore {
    /// `-N ln(sigma^2) - penalty * (|parents| + 1) * ln N`, the maximum
    /// likelihood residual variance of regressing `y` on `parents` with an
    /// intercept (fitted but not penalized).
    fn local(&self, y: usize, parents: &[usize]) -> Result<f64, OracleError> {
        let mut key: Vec<usize> = parents.to_vec();
        key.sort_unstable();
        if let Some(&hit) = self.cache.borrow().get(&(y, key.clone())) {
            return Ok(hit);
        }
        let sigma2 = self.residual_variance(y, &key)?;
        if !sigma2.is_finite() || sigma2 <= 0.0 {
            return Err(OracleError::RankDeficient(self.names[y].clone()));
        }
        let n = self.n as f64;
        let score = -n * sigma2.ln() - self.penalty * (key.len() as f64 + 1.0) * n.ln();
        self.cache.borrow_mut().insert((y, key), score);
        Ok(score)
    }
}

/// One-shot convenience over [`SemBicScore`].
pub fn sem_bic_local(
    d: &DataSet,
    y: usize,
    parents: &[usize],
    penalty_discount: f64,
) -> Result<f64, OracleError> {
    SemBicScore::new(d, penalty_discount)?.local(y, parents)
}
