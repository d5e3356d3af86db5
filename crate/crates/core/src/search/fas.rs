//! Fast adjacency search: prune a complete (or supplied) skeleton with
//! independence tests of growing conditioning size.

use super::SearchError;
use crate::graph::Graph;
use crate::oracle::IndependenceTest;
use itertools::Itertools;
use std::collections::BTreeMap;

/// Witnessing conditioning sets, one per removed pair.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SepsetMap {
    map: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SepsetMap {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn insert(&mut self, a: usize, b: usize, sepset: Vec<usize>) {
        self.map.insert(Self::key(a, b), sepset);
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.map.get(&Self::key(a, b)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug)]
pub struct FasResult {
    pub skeleton: Graph,
    pub sepsets: SepsetMap,
    pub tests_run: u64,
}

/// Remove the edge between every pair found independent given some subset
/// of a neighborhood, working depth 0, 1, ... up to `depth` (-1 for
/// unlimited). The stable variant freezes the adjacency sets consulted for
/// subset enumeration at the start of each depth, which makes the surviving
/// skeleton invariant to variable order. With `initial` given, only its
/// adjacencies are candidates.
pub fn fas(
    test: &dyn IndependenceTest,
    names: &[String],
    depth: i64,
    stable: bool,
    initial: Option<&Graph>,
) -> Result<FasResult, SearchError> {
    let p = names.len();
    let mut g = Graph::new(names.to_vec())?;
    match initial {
        Some(init) => {
            for e in init.edges() {
                let a = g
                    .index_of(init.name_of(e.a))
                    .ok_or_else(|| SearchError::InitialGraphMismatch(init.name_of(e.a).to_string()))?;
                let b = g
                    .index_of(init.name_of(e.b))
                    .ok_or_else(|| SearchError::InitialGraphMismatch(init.name_of(e.b).to_string()))?;
                g.add_undirected(a, b)?;
            }
        }
        None => {
            for a in 0..p {
                for b in (a + 1)..p {
                    g.add_undirected(a, b)?;
                }
            }
        }
    }

    let mut sepsets = SepsetMap::new();
    let mut tests_run = 0u64;
    let mut d = 0usize;
    loop {
        if depth >= 0 && d as i64 > depth {
            break;
        }
        // Some adjacent pair must still offer d candidate conditioners.
        if (0..p).all(|x| g.degree_of(x) < d + 1) {
            break;
        }
        let frozen: Option<Vec<Vec<usize>>> =
            if stable { Some((0..p).map(|i| g.adjacents_of(i)).collect()) } else { None };
        for x in 0..p {
            for y in g.adjacents_of(x) {
                if !g.is_adjacent(x, y) {
                    continue; // removed earlier in this sweep
                }
                let base: Vec<usize> = match &frozen {
                    Some(f) => f[x].iter().copied().filter(|&v| v != y).collect(),
                    None => g.adjacents_of(x).into_iter().filter(|&v| v != y).collect(),
                };
                if base.len() < d {
                    continue;
                }
                for subset in base.into_iter().combinations(d) {
                    tests_run += 1;
                    let decision = test.decide(x, y, &subset)?;
                    if decision.independent {
                        g.remove_between(x, y);
                        sepsets.insert(x, y, subset);
                        break;
                    }
                }
            }
        }
        d += 1;
    }
    Ok(FasResult { skeleton: g, sepsets, tests_run })
}
