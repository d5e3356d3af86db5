//! Pearson correlation and precision-matrix partial correlation.

use super::{DataError, DataSet};
use nalgebra::DMatrix;

/// Estimated spectral condition bound above which a conditioning submatrix
/// is declared singular.
const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    names: Vec<String>,
    values: DMatrix<f64>,
    sample_size: usize,
}

impl CorrelationMatrix {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }
}

/// Pearson correlations over an all-continuous dataset, sample variances
/// with the N-1 denominator. The diagonal is exactly 1.
pub fn correlation_matrix(d: &DataSet) -> Result<CorrelationMatrix, DataError> {
    let n = d.n_rows();
    if n < 2 {
        return Err(DataError::TooFewRows { needed: 2, found: n });
    }
    let p = d.n_vars();
    let mut centered: Vec<Vec<f64>> = Vec::with_capacity(p);
    let mut scale = Vec::with_capacity(p);
    for j in 0..p {
        let col = d.continuous(j)?;
        let mean = col.iter().sum::<f64>() / n as f64;
        let c: Vec<f64> = col.iter().map(|v| v - mean).collect();
        let ss: f64 = c.iter().map(|v| v * v).sum();
        if ss == 0.0 {
            return Err(DataError::ZeroVariance(d.variable(j).name.clone()));
        }
        scale.push(ss.sqrt());
        centered.push(c);
    }
    let mut values = DMatrix::zeros(p, p);
    for i in 0..p {
        values[(i, i)] = 1.0;
        for j in (i + 1)..p {
            let dot: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
            let r = (dot / (scale[i] * scale[j])).clamp(-1.0, 1.0);
            values[(i, j)] = r;
            values[(j, i)] = r;
        }
    }
    Ok(CorrelationMatrix { names: d.names(), values, sample_size: n })
}

/// Partial correlation of `x` and `y` given `z`, read off the inverse of
/// the correlation submatrix over `{x, y} ∪ z`.
pub fn partial_correlation(
    c: &CorrelationMatrix,
    x: usize,
    y: usize,
    z: &[usize],
) -> Result<f64, DataError> {
    if x == y || z.contains(&x) || z.contains(&y) {
        return Err(DataError::ConditioningOverlap);
    }
    if z.is_empty() {
        return Ok(c.get(x, y));
    }
    let mut idx = Vec::with_capacity(z.len() + 2);
    idx.push(x);
    idx.push(y);
    idx.extend_from_slice(z);
    let k = idx.len();
    let sub = DMatrix::from_fn(k, k, |i, j| c.get(idx[i], idx[j]));
    let chol = sub.cholesky().ok_or(DataError::SingularSubmatrix)?;
    let diag = chol.l_dirty();
    let mut lmin = f64::INFINITY;
    let mut lmax = 0.0f64;
    for i in 0..k {
        let v = diag[(i, i)].abs();
        lmin = lmin.min(v);
        lmax = lmax.max(v);
    }
    if lmin == 0.0 || (lmax / lmin).powi(2) > CONDITION_LIMIT {
        return Err(DataError::SingularSubmatrix);
    }
    let inv = chol.inverse();
    let r = -inv[(0, 1)] / (inv[(0, 0)] * inv[(1, 1)]).sqrt();
    Ok(r.clamp(-1.0, 1.0))
}
