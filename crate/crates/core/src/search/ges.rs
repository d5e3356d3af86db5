//! Greedy equivalence search over patterns.
//!
//! Forward phase: apply the best strictly score-improving insert operator
//! until none exists. Backward phase: same with delete operators. Each
//! operator edit is followed by re-closing the graph to a pattern. The
//! implementation is sequential; determinism is worth more here than
//! parallel speed.

use super::SearchError;
use crate::graph::{consistent_dag_extension, rebuild_cpdag, Graph};
use crate::oracle::LocalScore;
use itertools::Itertools;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct GesTrace {
    /// Total model score at the start and after every applied operator.
    pub step_scores: Vec<f64>,
    pub forward_steps: usize,
    /// Pattern after each applied operator.
    pub intermediate: Vec<Graph>,
}

#[derive(Debug, Clone)]
struct Insert {
    x: usize,
    y: usize,
    t: Vec<usize>,
    delta: f64,
}

#[derive(Debug, Clone)]
struct Delete {
    x: usize,
    y: usize,
    h: Vec<usize>,
    delta: f64,
}

/// Sum of local scores over a consistent extension of the pattern.
fn total_score(score: &dyn LocalScore, g: &Graph) -> Result<f64, SearchError> {
    let dag = consistent_dag_extension(g)?;
    let mut total = 0.0;
    for y in 0..dag.node_count() {
        total += score.local(y, &dag.parents_of(y))?;
    }
    Ok(total)
}

fn is_clique(g: &Graph, nodes: &[usize]) -> bool {
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            if !g.is_adjacent(a, b) {
                return false;
            }
        }
    }
    true
}

/// Is there a semi-directed path from `from` to `to` that avoids `blocked`?
/// Semi-directed: every step follows an undirected edge or a directed edge
/// in walk direction.
fn semidirected_reachable(g: &Graph, from: usize, to: usize, blocked: &BTreeSet<usize>) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for w in g.children_of(v).into_iter().chain(g.undirected_neighbors_of(v)) {
            if w == to {
                return true;
            }
            if !seen[w] && !blocked.contains(&w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn best_insert(score: &dyn LocalScore, g: &Graph) -> Result<Option<Insert>, SearchError> {
    let p = g.node_count();
    let mut best: Option<Insert> = None;
    for y in 0..p {
        let parents_y = g.parents_of(y);
        let neighbors_y = g.undirected_neighbors_of(y);
        for x in 0..p {
            if x == y || g.is_adjacent(x, y) {
                continue;
            }
            let na: Vec<usize> =
                neighbors_y.iter().copied().filter(|&w| g.is_adjacent(w, x)).collect();
            let t0: Vec<usize> =
                neighbors_y.iter().copied().filter(|&w| !g.is_adjacent(w, x)).collect();
            for t in t0.iter().copied().powerset() {
                let mut na_t = na.clone();
                na_t.extend(&t);
                if !is_clique(g, &na_t) {
                    continue;
                }
                let blocked: BTreeSet<usize> = na_t.iter().copied().collect();
                if semidirected_reachable(g, y, x, &blocked) {
                    continue;
                }
                let mut without: Vec<usize> = parents_y.clone();
                without.extend(&na_t);
                let mut with = without.clone();
                with.push(x);
                let delta = score.local(y, &with)? - score.local(y, &without)?;
                if best.as_ref().is_none_or(|b| delta > b.delta) {
                    best = Some(Insert { x, y, t, delta });
                }
            }
        }
    }
    Ok(best)
}

fn best_delete(score: &dyn LocalScore, g: &Graph) -> Result<Option<Delete>, SearchError> {
    let p = g.node_count();
    let mut best: Option<Delete> = None;
    for y in 0..p {
        let parents_y = g.parents_of(y);
        let neighbors_y = g.undirected_neighbors_of(y);
        for x in 0..p {
            if x == y {
                continue;
            }
            // Delete applies to x -> y and x -- y edges.
            let applicable = g.has_directed(x, y) || g.has_undirected(x, y);
            if !applicable {
                continue;
            }
            let na: Vec<usize> =
                neighbors_y.iter().copied().filter(|&w| w != x && g.is_adjacent(w, x)).collect();
            for h in na.iter().copied().powerset() {
                let rest: Vec<usize> =
                    na.iter().copied().filter(|w| !h.contains(w)).collect();
                if !is_clique(g, &rest) {
                    continue;
                }
                let mut without: Vec<usize> =
                    parents_y.iter().copied().filter(|&w| w != x).collect();
                without.extend(&rest);
                let mut with = without.clone();
                with.push(x);
                let delta = score.local(y, &without)? - score.local(y, &with)?;
                if best.as_ref().is_none_or(|b| delta > b.delta) {
                    best = Some(Delete { x, y, h, delta });
                }
            }
        }
    }
    Ok(best)
}

fn apply_insert(g: &mut Graph, op: &Insert) {
    g.add_directed(op.x, op.y).expect("insert endpoints are non-adjacent");
    for &t in &op.t {
        if g.has_undirected(t, op.y) {
            g.orient(t, op.y).expect("edge exists");
        }
    }
}

fn apply_delete(g: &mut Graph, op: &Delete) {
    g.remove_between(op.x, op.y);
    for &h in &op.h {
        if g.has_undirected(op.y, h) {
            g.orient(op.y, h).expect("edge exists");
        }
        if g.has_undirected(op.x, h) {
            g.orient(op.x, h).expect("edge exists");
        }
    }
}

/// Run greedy equivalence search with the given local score. Starts from
/// `initial` re-closed to a pattern when supplied, else from the empty
/// graph.
pub fn ges_search(
    score: &dyn LocalScore,
    names: &[String],
    initial: Option<&Graph>,
) -> Result<(Graph, GesTrace), SearchError> {
    let mut g = match initial {
        Some(init) => {
            let mut mapped = Graph::new(names.to_vec())?;
            for e in init.edges() {
                let a = mapped
                    .index_of(init.name_of(e.a))
                    .ok_or_else(|| SearchError::InitialGraphMismatch(init.name_of(e.a).to_string()))?;
                let b = mapped
                    .index_of(init.name_of(e.b))
                    .ok_or_else(|| SearchError::InitialGraphMismatch(init.name_of(e.b).to_string()))?;
                match (e.mark_a, e.mark_b) {
                    (crate::graph::Mark::Tail, crate::graph::Mark::Arrow) => {
                        mapped.add_directed(a, b)?
                    }
                    (crate::graph::Mark::Arrow, crate::graph::Mark::Tail) => {
                        mapped.add_directed(b, a)?
                    }
                    _ => mapped.add_undirected(a, b)?,
                }
            }
            rebuild_cpdag(&mapped)
        }
        None => Graph::new(names.to_vec())?,
    };

    let mut total = total_score(score, &g)?;
    let mut trace =
        GesTrace { step_scores: vec![total], forward_steps: 0, intermediate: Vec::new() };

    while let Some(op) = best_insert(score, &g)? {
        if op.delta <= 0.0 {
            break;
        }
        apply_insert(&mut g, &op);
        g = rebuild_cpdag(&g);
        total += op.delta;
        trace.step_scores.push(total);
        trace.forward_steps += 1;
        trace.intermediate.push(g.clone());
    }
    while let Some(op) = best_delete(score, &g)? {
        if op.delta <= 0.0 {
            break;
        }
        apply_delete(&mut g, &op);
        g = rebuild_cpdag(&g);
        total += op.delta;
        trace.step_scores.push(total);
        trace.intermediate.push(g.clone());
    }
    Ok((g, trace))
}
