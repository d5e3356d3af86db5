//! Pearson chi-square test of conditional independence for discrete data,
//! stratified over the conditioning set.

use super::{IndependenceDecision, IndependenceTest, OracleError};
use crate::data::{cross_tabulate, DataSet};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Minimum row count for a stratum to enter the statistic.
const STRATUM_TOTAL_FLOOR: f64 = 5.0;
/// Minimum expected cell count within a qualifying stratum.
const EXPECTED_CELL_FLOOR: f64 = 1.0;

pub struct ChiSquareTest<'a> {
    data: &'a DataSet,
    alpha: f64,
}

impl<'a> ChiSquareTest<'a> {
    pub fn new(data: &'a DataSet, alpha: f64) -> Self {
        ChiSquareTest { data, alpha }
    }
}

impl IndependenceTest for ChiSquareTest<'_> {
    fn decide(&self, x: usize, y: usize, z: &[usize]) -> Result<IndependenceDecision, OracleError> {
        let strata = cross_tabulate(self.data, x, y, z)?;
        let mut statistic = 0.0f64;
        let mut dof = 0u64;
        for stratum in &strata {
            let total = stratum.total() as f64;
            if total < STRATUM_TOTAL_FLOOR {
                continue;
            }
            let row_sums: Vec<f64> = stratum
                .counts
                .iter()
                .map(|row| row.iter().sum::<u64>() as f64)
                .collect();
            let cols = stratum.counts[0].len();
            let col_sums: Vec<f64> = (0..cols)
                .map(|c| stratum.counts.iter().map(|row| row[c] as f64).sum())
                .collect();
            let live_rows: Vec<usize> =
                (0..row_sums.len()).filter(|&r| row_sums[r] > 0.0).collect();
            let live_cols: Vec<usize> =
                (0..col_sums.len()).filter(|&c| col_sums[c] > 0.0).collect();
            if live_rows.len() < 2 || live_cols.len() < 2 {
                continue;
            }
            let mut stratum_stat = 0.0;
            let mut below_floor = false;
            'cells: for &r in &live_rows {
                for &c in &live_cols {
                    let expected = row_sums[r] * col_sums[c] / total;
                    if expected < EXPECTED_CELL_FLOOR {
                        below_floor = true;
                        break 'cells;
                    }
                    let observed = stratum.counts[r][c] as f64;
                    stratum_stat += (observed - expected).powi(2) / expected;
                }
            }
            if below_floor {
                continue;
            }
            statistic += stratum_stat;
            dof += ((live_rows.len() - 1) * (live_cols.len() - 1)) as u64;
        }
        if dof == 0 {
            return Ok(IndependenceDecision {
                independent: true,
                p_value: 1.0,
                statistic: f64::NAN,
                skipped: true,
            });
        }
        let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
        let p_value = 1.0 - dist.cdf(statistic);
        Ok(IndependenceDecision {
            independent: p_value > self.alpha,
            p_value,
            statistic,
            skipped: false,
        })
    }
}
