//! Pattern (CPDAG) computation and orientation-propagation rules.

use super::{Graph, GraphError};

/// The pattern of a DAG: its skeleton, its unshielded colliders, and every
/// orientation those compel.
pub fn cpdag_of(g: &Graph) -> Result<Graph, GraphError> {
    if !g.is_dag() {
        return Err(GraphError::NotADag);
    }
    let mut pattern = g.skeleton();
    for y in 0..g.node_count() {
        let parents = g.parents_of(y);
        for (i, &p) in parents.iter().enumerate() {
            for &q in &parents[i + 1..] {
                if !g.is_adjacent(p, q) {
                    pattern.orient(p, y)?;
                    pattern.orient(q, y)?;
                }
            }
        }
    }
    meek_close_in_place(&mut pattern);
    Ok(pattern)
}

/// Fixpoint of the four orientation-propagation rules. Only converts
/// undirected edges to directed ones; existing arrows are never touched.
pub fn meek_closure(g: &Graph) -> Graph {
    let mut out = g.clone();
    meek_close_in_place(&mut out);
    out
}

pub(crate) fn meek_close_in_place(g: &mut Graph) {
    loop {
        let mut changed = false;
        changed |= apply_rule(g, rule1_matches);
        changed |= apply_rule(g, rule2_matches);
        changed |= apply_rule(g, rule3_matches);
        changed |= apply_rule(g, rule4_matches);
        if !changed {
            break;
        }
    }
}

fn apply_rule(g: &mut Graph, matches: fn(&Graph) -> Vec<(usize, usize)>) -> bool {
    let mut changed = false;
    for (tail, head) in matches(g) {
        if g.has_undirected(tail, head) {
            g.orient(tail, head).expect("matched edges exist");
            changed = true;
        }
    }
    changed
}

/// a -> b, b -- c, a and c nonadjacent: orient b -> c.
fn rule1_matches(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..g.node_count() {
        let parents = g.parents_of(b);
        if parents.is_empty() {
            continue;
        }
        for c in g.undirected_neighbors_of(b) {
            if parents.iter().any(|&a| a != c && !g.is_adjacent(a, c)) {
                out.push((b, c));
            }
        }
    }
    out
}

/// a -> c -> b with a -- b: orient a -> b.
fn rule2_matches(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for e in g.edges().filter(|e| e.is_undirected()).collect::<Vec<_>>() {
        for (a, b) in [(e.a, e.b), (e.b, e.a)] {
            let chain = g
                .children_of(a)
                .into_iter()
                .any(|c| g.has_directed(c, b));
            if chain {
                out.push((a, b));
                break;
            }
        }
    }
    out
}

/// a -- b with two nonadjacent c, d where a -- c, a -- d, c -> b, d -> b:
/// orient a -> b.
fn rule3_matches(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for e in g.edges().filter(|e| e.is_undirected()).collect::<Vec<_>>() {
        for (a, b) in [(e.a, e.b), (e.b, e.a)] {
            let parents_b: Vec<usize> = g
                .parents_of(b)
                .into_iter()
                .filter(|&c| g.has_undirected(a, c))
                .collect();
            let mut fired = false;
            for (i, &c) in parents_b.iter().enumerate() {
                for &d in &parents_b[i + 1..] {
                    if !g.is_adjacent(c, d) {
                        out.push((a, b));
                        fired = true;
                        break;
                    }
                }
                if fired {
                    break;
                }
            }
            if fired {
                break;
            }
        }
    }
    out
}

/// a -- b with a chain a -- c, c -> d, d -> b and c, b nonadjacent: orient
/// a -> b. With b -> a either orientation of a -- c would force a cycle or
/// a fresh unshielded collider, so a -> b is compelled.
fn rule4_matches(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for e in g.edges().filter(|e| e.is_undirected()).collect::<Vec<_>>() {
        for (a, b) in [(e.a, e.b), (e.b, e.a)] {
            let mut fired = false;
            for c in g.undirected_neighbors_of(a) {
                if c == b || g.is_adjacent(c, b) {
                    continue;
                }
                if g.children_of(c).into_iter().any(|d| g.has_directed(d, b)) {
                    out.push((a, b));
                    fired = true;
                    break;
                }
            }
            if fired {
                break;
            }
        }
    }
    out
}

/// Re-close a mixed graph to a pattern: keep the skeleton, keep exactly the
/// orientations that participate in unshielded colliders of the current
/// graph, and propagate.
pub fn rebuild_cpdag(g: &Graph) -> Graph {
    let mut pattern = g.skeleton();
    for y in 0..g.node_count() {
        let parents = g.parents_of(y);
        for (i, &p) in parents.iter().enumerate() {
            for &q in &parents[i + 1..] {
                if !g.is_adjacent(p, q) {
                    pattern.orient(p, y).expect("collider edges exist");
                    pattern.orient(q, y).expect("collider edges exist");
                }
            }
        }
    }
    meek_close_in_place(&mut pattern);
    pattern
}

/// A DAG with the same skeleton and orientations as `g`, every undirected
/// edge directed. Repeatedly removes a node whose undirected neighbors form
/// a clique with all its adjacents and which has no outgoing arrows,
/// pointing its undirected edges inward.
pub fn consistent_dag_extension(g: &Graph) -> Result<Graph, GraphError> {
    let mut work = g.clone();
    let mut result = g.clone();
    let mut remaining: Vec<usize> = (0..g.node_count()).collect();
    while !remaining.is_empty() {
        let mut chosen = None;
        'candidates: for (slot, &x) in remaining.iter().enumerate() {
            if !work.children_of(x).is_empty() {
                continue;
            }
            let und = work.undirected_neighbors_of(x);
            let adjacent = work.adjacents_of(x);
            for &w in &und {
                for &o in &adjacent {
                    if o != w && !work.is_adjacent(w, o) {
                        continue 'candidates;
                    }
                }
            }
            chosen = Some((slot, x));
            break;
        }
        let Some((slot, x)) = chosen else {
            return Err(GraphError::NoExtension);
        };
        for w in work.undirected_neighbors_of(x) {
            result.orient(w, x)?;
        }
        for o in work.adjacents_of(x) {
            work.remove_between(x, o);
        }
        remaining.remove(slot);
    }
    Ok(result)
}
