//! Fisher Z test of conditional independence for continuous data.

use super::{IndependenceDecision, IndependenceTest, OracleError};
use crate::data::{correlation_matrix, partial_correlation, CorrelationMatrix, DataSet};
use statrs::distribution::{ContinuousCDF, Normal};

/// The z statistic and two-sided p-value for a (partial) correlation `r`
/// observed on `n` samples with `cond` conditioning variables.
pub fn fisher_z_statistic(r: f64, n: usize, cond: usize) -> Result<(f64, f64), OracleError> {
    let dof = n as i64 - cond as i64 - 3;
    if dof <= 0 {
        return Err(OracleError::FisherZDomain { n, z: cond });
    }
    let q = 0.5 * ((1.0 + r) / (1.0 - r)).ln();
    let stat = (dof as f64).sqrt() * q;
    let normal = Normal::new(0.0, 1.0).expect("standard normal is valid");
    let p = 2.0 * (1.0 - normal.cdf(stat.abs()));
    Ok((stat, p))
}

pub struct FisherZTest {
    corr: CorrelationMatrix,
    alpha: f64,
}

impl FisherZTest {
    pub fn new(d: &DataSet, alpha: f64) -> Result<Self, OracleError> {
        Ok(FisherZTest { corr: correlation_matrix(d)?, alpha })
    }

    pub fn from_correlations(corr: CorrelationMatrix, alpha: f64) -> Self {
        FisherZTest { corr, alpha }
    }
}

impl IndependenceTest for FisherZTest {
    fn decide(&self, x: usize, y: usize, z: &[usize]) -> Result<IndependenceDecision, OracleError> {
        let r = partial_correlation(&self.corr, x, y, z)?;
        let (statistic, p_value) = fisher_z_statistic(r, self.corr.sample_size(), z.len())?;
        Ok(IndependenceDecision {
            independent: p_value > self.alpha,
            p_value,
            statistic,
            skipped: false,
        })
    }
}
