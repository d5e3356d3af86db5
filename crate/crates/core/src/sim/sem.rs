//! Linear Gaussian structural equation models.
//!
//! Each edge carries a coefficient whose magnitude is uniform in
//! [coefLow, coefHigh] with a random sign; each node carries a Gaussian
//! error with variance uniform in [varLow, varHigh]. Values are generated
//! in topological order and latent columns are dropped from the emitted
//! dataset.

use super::SimError;
use crate::data::{Column, DataSet, VarKind, Variable};
use crate::graph::{Graph, GraphError};
use crate::params::{ParamError, ParamPoint};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SemModel {
    graph: Graph,
    order: Vec<usize>,
    /// (parent, child) -> coefficient.
    coefficients: BTreeMap<(usize, usize), f64>,
    variances: Vec<f64>,
}

impl SemModel {
    pub fn draw(g: &Graph, p: &ParamPoint, rng: &mut impl Rng) -> Result<SemModel, SimError> {
        let order = g.directed_topological_order()?;
        let coef_low = p.f64("coefLow")?;
        let coef_high = p.f64("coefHigh")?;
        let var_low = p.f64("varLow")?;
        let var_high = p.f64("varHigh")?;
        for (name, low, high) in [("coef", coef_low, coef_high), ("var", var_low, var_high)] {
            if low > high || low < 0.0 {
                return Err(ParamError::OutOfRange {
                    name: format!("{name}Low/{name}High"),
                    reason: format!("invalid range [{low}, {high}]"),
                }
                .into());
            }
        }
        let mut coefficients = BTreeMap::new();
        for e in g.edges() {
            let (s, t) = (e.source(), e.target());
            let (Some(s), Some(t)) = (s, t) else {
                return Err(SimError::Graph(GraphError::NotADag));
            };
            let magnitude = rng.gen_range(coef_low..=coef_high);
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            coefficients.insert((s, t), sign * magnitude);
        }
        let variances = (0..g.node_count()).map(|_| rng.gen_range(var_low..=var_high)).collect();
        Ok(SemModel { graph: g.clone(), order, coefficients, variances })
    }

    /// Build a model with explicit coefficients and variances.
    pub fn with_parameters(
        g: &Graph,
        coefficients: BTreeMap<(usize, usize), f64>,
        variances: Vec<f64>,
    ) -> Result<SemModel, SimError> {
        let order = g.directed_topological_order()?;
        assert_eq!(variances.len(), g.node_count(), "one variance per node");
        Ok(SemModel { graph: g.clone(), order, coefficients, variances })
    }

    pub fn coefficient(&self, parent: usize, child: usize) -> Option<f64> {
        self.coefficients.get(&(parent, child)).copied()
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }

    /// Model-implied covariance over all nodes, latents included.
    pub fn analytic_covariance(&self) -> DMatrix<f64> {
        let p = self.graph.node_count();
        let mut i_minus_b: DMatrix<f64> = DMatrix::identity(p, p);
        for (&(s, t), &b) in &self.coefficients {
            i_minus_b[(s, t)] -= b;
        }
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.variances.clone()));
        let inv = i_minus_b
            .clone()
            .try_inverse()
            .expect("I - B is triangular under a topological order");
        inv.transpose() * d * inv
    }

    /// Generate `sample_size` i.i.d. rows; latent columns are dropped.
    pub fn simulate(&self, sample_size: usize, rng: &mut impl Rng) -> DataSet {
        let p = self.graph.node_count();
        let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(sample_size); p];
        let mut row = vec![0.0f64; p];
        for _ in 0..sample_size {
            for &j in &self.order {
                let noise: f64 = rng.sample::<f64, _>(StandardNormal) * self.variances[j].sqrt();
                let mut value = noise;
                for i in self.graph.parents_of(j) {
                    value += self.coefficients[&(i, j)] * row[i];
                }
                row[j] = value;
            }
            for j in 0..p {
                columns[j].push(row[j]);
            }
        }
        let measured = self.graph.measured_indices();
        let variables = measured
            .iter()
            .map(|&j| Variable {
                name: self.graph.name_of(j).to_string(),
                kind: VarKind::Continuous,
            })
            .collect();
        let data_columns =
            measured.iter().map(|&j| Column::Continuous(std::mem::take(&mut columns[j]))).collect();
        DataSet::from_columns(variables, data_columns).expect("generated columns are well formed")
    }
}

pub fn sem_simulate_model(
    g: &Graph,
    p: &ParamPoint,
    seed: u64,
) -> Result<(SemModel, DataSet), SimError> {
    let sample_size = p.usize("sampleSize")?;
    if sample_size < 1 {
        return Err(SimError::BadSampleSize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = SemModel::draw(g, p, &mut rng)?;
    let data = model.simulate(sample_size, &mut rng);
    Ok((model, data))
}

pub fn sem_simulate(g: &Graph, p: &ParamPoint, seed: u64) -> Result<DataSet, SimError> {
    sem_simulate_model(g, p, seed).map(|(_, d)| d)
}
