//! Multinomial Bayes net simulation.
//!
//! Every node gets `numCategories` categories. Each conditional probability
//! row is drawn uniformly from the probability simplex (normalized unit
//! exponentials); rows are sampled ancestrally and latent columns dropped.

use super::SimError;
use crate::data::{Column, DataSet, VarKind, Variable};
use crate::graph::Graph;
use crate::params::ParamPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

#[derive(Debug, Clone)]
pub struct BayesModel {
    graph: Graph,
    order: Vec<usize>,
    /// Per node, its sorted parent list.
    parents: Vec<Vec<usize>>,
    categories: usize,
    /// `cpts[node][parent_config][category]`.
    cpts: Vec<Vec<Vec<f64>>>,
}

impl BayesModel {
    pub fn draw(g: &Graph, p: &ParamPoint, rng: &mut impl Rng) -> Result<BayesModel, SimError> {
        let order = g.directed_topological_order()?;
        let categories = p.usize("numCategories")?;
        if categories < 2 {
            return Err(SimError::BadNumCategories);
        }
        let n = g.node_count();
        let parents: Vec<Vec<usize>> = (0..n).map(|j| g.parents_of(j)).collect();
        let mut cpts = Vec::with_capacity(n);
        for node_parents in &parents {
            let rows = categories.pow(node_parents.len() as u32);
            let mut table = Vec::with_capacity(rows);
            for _ in 0..rows {
                let mut row: Vec<f64> =
                    (0..categories).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                let total: f64 = row.iter().sum();
                for v in &mut row {
                    *v /= total;
                }
                table.push(row);
            }
            cpts.push(table);
        }
        Ok(BayesModel { graph: g.clone(), order, parents, categories, cpts })
    }

    pub fn categories(&self) -> usize {
        self.categories
    }

    pub fn cpt(&self, node: usize) -> &[Vec<f64>] {
        &self.cpts[node]
    }

    /// Row index for a node's conditional table: the first (lowest-index)
    /// parent is the most significant digit.
    pub fn parent_config_index(&self, node: usize, values: &[usize]) -> usize {
        let mut idx = 0usize;
        for &parent in &self.parents[node] {
            idx = idx * self.categories + values[parent];
        }
        idx
    }

    pub fn simulate(&self, sample_size: usize, rng: &mut impl Rng) -> DataSet {
        let p = self.graph.node_count();
        let mut columns: Vec<Vec<usize>> = vec![Vec::with_capacity(sample_size); p];
        let mut row = vec![0usize; p];
        for _ in 0..sample_size {
            for &j in &self.order {
                let probs = &self.cpts[j][self.parent_config_index(j, &row)];
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                let mut value = self.categories - 1;
                for (cat, &pr) in probs.iter().enumerate() {
                    acc += pr;
                    if u < acc {
                        value = cat;
                        break;
                    }
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
                kind: VarKind::Discrete { categories: self.categories },
            })
            .collect();
        let data_columns =
            measured.iter().map(|&j| Column::Discrete(std::mem::take(&mut columns[j]))).collect();
        DataSet::from_columns(variables, data_columns).expect("generated columns are well formed")
    }
}

pub fn bayes_net_simulate_model(
    g: &Graph,
    p: &ParamPoint,
    seed: u64,
) -> Result<(BayesModel, DataSet), SimError> {
    let sample_size = p.usize("sampleSize")?;
    if sample_size < 1 {
        return Err(SimError::BadSampleSize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = BayesModel::draw(g, p, &mut rng)?;
    let data = model.simulate(sample_size, &mut rng);
    Ok((model, data))
}

pub fn bayes_net_simulate(g: &Graph, p: &ParamPoint, seed: u64) -> Result<DataSet, SimError> {
    bayes_net_simulate_model(g, p, seed).map(|(_, d)| d)
}
