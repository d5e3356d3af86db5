//! Random DAG generation: forward edges over a random node order.

use super::{Graph, GraphError};
use crate::params::ParamPoint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Validated inputs for [`random_forward_dag`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomDagSpec {
    pub num_measures: usize,
    pub num_latents: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub max_indegree: usize,
    pub max_outdegree: usize,
}

impl RandomDagSpec {
    pub fn from_point(p: &ParamPoint) -> Result<Self, GraphError> {
        if p.i64("connected")? != 0 {
            return Err(GraphError::ConnectedUnsupported);
        }
        let spec = RandomDagSpec {
            num_measures: p.usize("numMeasures")?,
            num_latents: p.usize("numLatents")?,
            avg_degree: p.f64("avgDegree")?,
            max_degree: p.usize("maxDegree")?,
            max_indegree: p.usize("maxIndegree")?,
            max_outdegree: p.usize("maxOutdegree")?,
        };
        if spec.num_measures < 1 {
            return Err(crate::params::ParamError::OutOfRange {
                name: "numMeasures".to_string(),
                reason: "must be at least 1".to_string(),
            }
            .into());
        }
        if spec.avg_degree < 0.0 {
            return Err(crate::params::ParamError::OutOfRange {
                name: "avgDegree".to_string(),
                reason: "must be non-negative".to_string(),
            }
            .into());
        }
        for (name, cap) in [
            ("maxDegree", spec.max_degree),
            ("maxIndegree", spec.max_indegree),
            ("maxOutdegree", spec.max_outdegree),
        ] {
            if cap < 1 {
                return Err(crate::params::ParamError::OutOfRange {
                    name: name.to_string(),
                    reason: "must be at least 1".to_string(),
                }
                .into());
            }
        }
        Ok(spec)
    }
}

/// Draw a DAG over `numMeasures + numLatents` nodes (`X1..Xn`, then
/// `L1..Lk` flagged latent).
///
/// A random topological order fixes the direction of every candidate pair;
/// `round(avgDegree * nodes / 2)` edges are then sampled without replacement,
/// skipping any edge that would break a degree cap. When the caps exhaust
/// the candidates the graph simply ends up sparser than requested.
pub fn random_forward_dag(spec: &RandomDagSpec, seed: u64) -> Graph {
    let total = spec.num_measures + spec.num_latents;
    let mut names: Vec<String> = (1..=spec.num_measures).map(|i| format!("X{i}")).collect();
    names.extend((1..=spec.num_latents).map(|i| format!("L{i}")));
    let mut latent = vec![false; spec.num_measures];
    latent.extend(vec![true; spec.num_latents]);
    let mut g = Graph::with_latents(names, latent).expect("generated names are unique");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut rng);

    let target = (spec.avg_degree * total as f64 / 2.0).round() as usize;
    let mut candidates = Vec::with_capacity(total * total.saturating_sub(1) / 2);
    for i in 0..total {
        for j in (i + 1)..total {
            candidates.push((order[i], order[j]));
        }
    }
    candidates.shuffle(&mut rng);

    let mut degree = vec![0usize; total];
    let mut indegree = vec![0usize; total];
    let mut outdegree = vec![0usize; total];
    let mut added = 0usize;
    for (u, v) in candidates {
        if added == target {
            break;
        }
        if degree[u] >= spec.max_degree
            || degree[v] >= spec.max_degree
            || outdegree[u] >= spec.max_outdegree
            || indegree[v] >= spec.max_indegree
        {
            continue;
        }
        g.add_directed(u, v).expect("candidate pairs are unique");
        degree[u] += 1;
        degree[v] += 1;
        outdegree[u] += 1;
        indegree[v] += 1;
        added += 1;
    }
    g
}
