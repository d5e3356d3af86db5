//! Collider orientation over unshielded triples, in the standard
//! sepset-based form and the conservative form.

use super::{SearchError, SepsetMap};
use crate::graph::Graph;
use crate::oracle::IndependenceTest;
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleMark {
    Collider,
    Noncollider,
    Ambiguous,
}

/// Marks per unshielded triple (x, y, z), endpoints ordered by node name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TripleMarks {
    map: BTreeMap<(usize, usize, usize), TripleMark>,
}

impl TripleMarks {
    pub fn get(&self, x: usize, y: usize, z: usize) -> Option<TripleMark> {
        self.map.get(&(x, y, z)).or_else(|| self.map.get(&(z, y, x))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &TripleMark)> {
        self.map.iter()
    }

    pub fn ambiguous_count(&self) -> usize {
        self.map.values().filter(|m| **m == TripleMark::Ambiguous).count()
    }

    pub fn collider_count(&self) -> usize {
        self.map.values().filter(|m| **m == TripleMark::Collider).count()
    }
}

/// All unshielded triples of `g`, endpoints normalized and the whole list
/// ordered lexicographically by node names so orientation conflicts resolve
/// the same way on every run.
pub fn unshielded_triples(g: &Graph) -> Vec<(usize, usize, usize)> {
    let mut triples = Vec::new();
    for y in 0..g.node_count() {
        let adj = g.adjacents_of(y);
        for (i, &x) in adj.iter().enumerate() {
            for &z in &adj[i + 1..] {
                if !g.is_adjacent(x, z) {
                    let (a, b) =
                        if g.name_of(x) <= g.name_of(z) { (x, z) } else { (z, x) };
                    triples.push((a, y, b));
                }
            }
        }
    }
    triples.sort_by(|&(x1, y1, z1), &(x2, y2, z2)| {
        (g.name_of(x1), g.name_of(y1), g.name_of(z1))
            .cmp(&(g.name_of(x2), g.name_of(y2), g.name_of(z2)))
    });
    triples
}

/// Add an arrowhead at `head` only when the edge is still undirected; an
/// existing orientation, however it arose, is never overwritten.
fn orient_into(g: &mut Graph, tail: usize, head: usize) {
    if g.has_undirected(tail, head) {
        g.orient(tail, head).expect("edge exists");
    }
}

/// Standard rule: orient x -> y <- z exactly when y is missing from the
/// recorded sepset of (x, z). Pairs without a recorded sepset are left
/// alone.
pub fn orient_colliders_from_sepsets(g: &mut Graph, sepsets: &SepsetMap) -> TripleMarks {
    orient_colliders_standard(g, sepsets, None)
        .expect("without a fallback test no query can fail")
}

/// Standard rule with an optional fallback: when an unshielded pair has no
/// recorded sepset (its edge was already absent from the initial candidate
/// graph, so the adjacency search never removed it), a witnessing set is
/// searched for on demand, smallest first.
pub fn orient_colliders_standard(
    g: &mut Graph,
    sepsets: &SepsetMap,
    fallback: Option<(&dyn IndependenceTest, i64)>,
) -> Result<TripleMarks, SearchError> {
    let mut marks = TripleMarks::default();
    for (x, y, z) in unshielded_triples(g) {
        let sepset: Vec<usize> = match sepsets.get(x, z) {
            Some(s) => s.to_vec(),
            None => match fallback {
                Some((test, depth)) => {
                    match find_separating_set(g, test, x, z, depth)? {
                        Some(s) => s,
                        None => continue,
                    }
                }
                None => continue,
            },
        };
        if sepset.contains(&y) {
            marks.map.insert((x, y, z), TripleMark::Noncollider);
        } else {
            orient_into(g, x, y);
            orient_into(g, z, y);
            marks.map.insert((x, y, z), TripleMark::Collider);
        }
    }
    Ok(marks)
}

/// First conditioning set that separates (x, z), scanning both endpoint
/// adjacencies by growing size in a fixed order.
fn find_separating_set(
    g: &Graph,
    test: &dyn IndependenceTest,
    x: usize,
    z: usize,
    depth: i64,
) -> Result<Option<Vec<usize>>, SearchError> {
    for anchor in [x, z] {
        let other = if anchor == x { z } else { x };
        let base: Vec<usize> =
            g.adjacents_of(anchor).into_iter().filter(|&v| v != other).collect();
        let max_d = if depth < 0 { base.len() } else { (depth as usize).min(base.len()) };
        for d in 0..=max_d {
            for subset in base.iter().copied().combinations(d) {
                if test.decide(x, z, &subset)?.independent {
                    return Ok(Some(subset));
                }
            }
        }
    }
    Ok(None)
}

/// Conservative rule: re-enumerate every conditioning set that separates
/// (x, z) inside either endpoint's adjacency, up to `depth` (-1 for
/// unlimited). Orient only when y appears in none of them; record the
/// triple ambiguous when the evidence disagrees (or no separating set is
/// found at all).
pub fn orient_colliders_conservative(
    g: &mut Graph,
    test: &dyn IndependenceTest,
    depth: i64,
) -> Result<TripleMarks, SearchError> {
    let mut marks = TripleMarks::default();
    for (x, y, z) in unshielded_triples(g) {
        let mut separating: BTreeSet<Vec<usize>> = BTreeSet::new();
        for anchor in [x, z] {
            let other = if anchor == x { z } else { x };
            let base: Vec<usize> =
                g.adjacents_of(anchor).into_iter().filter(|&v| v != other).collect();
            let max_d = if depth < 0 { base.len() } else { (depth as usize).min(base.len()) };
            for d in 0..=max_d {
                for subset in base.iter().copied().combinations(d) {
                    if separating.contains(&subset) {
                        continue;
                    }
                    if test.decide(x, z, &subset)?.independent {
                        separating.insert(subset);
                    }
                }
            }
        }
        let mark = if separating.is_empty() {
            TripleMark::Ambiguous
        } else {
            let in_all = separating.iter().all(|s| s.contains(&y));
            let in_none = separating.iter().all(|s| !s.contains(&y));
            match (in_none, in_all) {
                (true, false) => TripleMark::Collider,
                (false, true) => TripleMark::Noncollider,
                _ => TripleMark::Ambiguous,
            }
        };
        if mark == TripleMark::Collider {
            orient_into(g, x, y);
            orient_into(g, z, y);
        }
        marks.map.insert((x, y, z), mark);
    }
    Ok(marks)
}
