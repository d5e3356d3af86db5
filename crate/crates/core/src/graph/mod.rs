//! Mixed graphs over named nodes: DAGs, CPDAGs, and the operations the
//! harness needs on them (d-separation, pattern computation, orientation
//! rules, random generation, and the text file format).
//!
//! An edge stores a mark at each end. Tail/arrow pairs encode directed
//! edges, tail/tail undirected, arrow/arrow bidirected. Bidirected edges are
//! representable because external result files may contain them, but no
//! generator here produces one.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use thiserror::Error;

mod cpdag;
mod dsep;
mod random;
mod text;

pub use cpdag::{consistent_dag_extension, cpdag_of, meek_closure, rebuild_cpdag};
pub use random::{random_forward_dag, RandomDagSpec};
pub use text::{parse_graph_text, render_graph_text};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("self edge on node `{0}`")]
    SelfEdge(String),
    #[error("nodes `{0}` and `{1}` are already connected")]
    DuplicateEdge(String, String),
    #[error("no edge between `{0}` and `{1}`")]
    NoSuchEdge(String, String),
    #[error("graph is not a DAG")]
    NotADag,
    #[error("x and y must be distinct nodes")]
    IdenticalPair,
    #[error("conditioning set must not contain x or y")]
    ConditioningOverlap,
    #[error("graph admits no consistent DAG extension")]
    NoExtension,
    #[error("graph file: {0}")]
    Format(String),
    #[error("graph file: unknown edge token `{0}`")]
    UnknownEdgeToken(String),
    #[error("parameter error: {0}")]
    Param(#[from] crate::params::ParamError),
    #[error("the `connected` parameter is accepted for the record only; non-zero values are unsupported")]
    ConnectedUnsupported,
}

/// Mark at one end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Tail,
    Arrow,
}

/// An edge between node indices `a < b` with a mark at each end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub mark_a: Mark,
    pub mark_b: Mark,
}

impl Edge {
    pub fn is_undirected(&self) -> bool {
        self.mark_a == Mark::Tail && self.mark_b == Mark::Tail
    }

    pub fn is_bidirected(&self) -> bool {
        self.mark_a == Mark::Arrow && self.mark_b == Mark::Arrow
    }

    pub fn is_directed(&self) -> bool {
        !self.is_undirected() && !self.is_bidirected()
    }

    /// Tail end of a directed edge.
    pub fn source(&self) -> Option<usize> {
        match (self.mark_a, self.mark_b) {
            (Mark::Tail, Mark::Arrow) => Some(self.a),
            (Mark::Arrow, Mark::Tail) => Some(self.b),
            _ => None,
        }
    }

    /// Arrow end of a directed edge.
    pub fn target(&self) -> Option<usize> {
        match (self.mark_a, self.mark_b) {
            (Mark::Tail, Mark::Arrow) => Some(self.b),
            (Mark::Arrow, Mark::Tail) => Some(self.a),
            _ => None,
        }
    }
}

/// Which graph an estimate is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    TrueDag,
    TrueCpdag,
}

/// A mixed graph: ordered named nodes, per-node latent flags, and at most
/// one edge per unordered node pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    names: Vec<String>,
    latent: Vec<bool>,
    by_name: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), (Mark, Mark)>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, GraphError> {
        let n = names.len();
        Self::with_latents(names, vec![false; n])
    }

    pub fn with_latents<S: Into<String>>(names: Vec<S>, latent: Vec<bool>) -> Result<Self, GraphError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert_eq!(names.len(), latent.len(), "one latent flag per node");
        let mut by_name = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateNode(name.clone()));
            }
        }
        let adj = vec![BTreeSet::new(); names.len()];
        Ok(Graph { names, latent, by_name, edges: BTreeMap::new(), adj })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn require_index(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name).ok_or_else(|| GraphError::UnknownNode(name.to_string()))
    }

    pub fn is_latent(&self, i: usize) -> bool {
        self.latent[i]
    }

    pub fn measured_indices(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&i| !self.latent[i]).collect()
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    fn insert_edge(&mut self, a: usize, b: usize, mark_a: Mark, mark_b: Mark) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfEdge(self.names[a].clone()));
        }
        let (key, marks) = if a < b { ((a, b), (mark_a, mark_b)) } else { ((b, a), (mark_b, mark_a)) };
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(self.names[a].clone(), self.names[b].clone()));
        }
        self.edges.insert(key, marks);
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(())
    }

    pub fn add_directed(&mut self, tail: usize, head: usize) -> Result<(), GraphError> {
        self.insert_edge(tail, head, Mark::Tail, Mark::Arrow)
    }

    pub fn add_undirected(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.insert_edge(a, b, Mark::Tail, Mark::Tail)
    }

    pub fn add_bidirected(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.insert_edge(a, b, Mark::Arrow, Mark::Arrow)
    }

    pub fn remove_between(&mut self, a: usize, b: usize) -> bool {
        let removed = self.edges.remove(&Self::key(a, b)).is_some();
        if removed {
            self.adj[a].remove(&b);
            self.adj[b].remove(&a);
        }
        removed
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<Edge> {
        let (ka, kb) = Self::key(a, b);
        self.edges.get(&(ka, kb)).map(|&(ma, mb)| Edge { a: ka, b: kb, mark_a: ma, mark_b: mb })
    }

    /// Mark at `at`'s end of the edge between `other` and `at`.
    pub fn mark_at(&self, other: usize, at: usize) -> Option<Mark> {
        self.edge_between(other, at).map(|e| if e.a == at { e.mark_a } else { e.mark_b })
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn has_directed(&self, tail: usize, head: usize) -> bool {
        self.edge_between(tail, head)
            .map(|e| e.source() == Some(tail) && e.target() == Some(head))
            .unwrap_or(false)
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.edge_between(a, b).map(|e| e.is_undirected()).unwrap_or(false)
    }

    /// Replace the edge between `tail` and `head` with `tail -> head`.
    pub fn orient(&mut self, tail: usize, head: usize) -> Result<(), GraphError> {
        let key = Self::key(tail, head);
        match self.edges.get_mut(&key) {
            Some(marks) => {
                *marks = if key.0 == tail { (Mark::Tail, Mark::Arrow) } else { (Mark::Arrow, Mark::Tail) };
                Ok(())
            }
            None => Err(GraphError::NoSuchEdge(self.names[tail].clone(), self.names[head].clone())),
        }
    }

    pub fn adjacents_of(&self, i: usize) -> Vec<usize> {
        self.adj[i].iter().copied().collect()
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn parents_of(&self, i: usize) -> Vec<usize> {
        self.adj[i]
            .iter()
            .copied()
            .filter(|&j| self.has_directed(j, i))
            .collect()
    }

    pub fn children_of(&self, i: usize) -> Vec<usize> {
        self.adj[i]
            .iter()
            .copied()
            .filter(|&j| self.has_directed(i, j))
            .collect()
    }

    pub fn undirected_neighbors_of(&self, i: usize) -> Vec<usize> {
        self.adj[i]
            .iter()
            .copied()
            .filter(|&j| self.has_undirected(i, j))
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|(&(a, b), &(mark_a, mark_b))| Edge { a, b, mark_a, mark_b })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_bidirected_edges(&self) -> bool {
        self.edges().any(|e| e.is_bidirected())
    }

    /// Kahn's algorithm over the directed part, smallest index first.
    /// Undirected and bidirected edges are ignored.
    pub fn directed_topological_order(&self) -> Result<Vec<usize>, GraphError> {
        let n = self.node_count();
        let mut indeg = vec![0usize; n];
        for e in self.edges() {
            if let Some(t) = e.target() {
                indeg[t] += 1;
            }
        }
        let mut ready: BTreeSet<usize> =
            (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for c in self.children_of(i) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(GraphError::NotADag)
        }
    }

    pub fn directed_part_is_acyclic(&self) -> bool {
        self.directed_topological_order().is_ok()
    }

    /// True when every edge is directed and the graph is acyclic.
    pub fn is_dag(&self) -> bool {
        self.edges().all(|e| e.is_directed()) && self.directed_part_is_acyclic()
    }

    /// Same nodes, every edge undirected.
    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::with_latents(self.names.clone(), self.latent.clone())
            .expect("node names already validated");
        for e in self.edges() {
            g.add_undirected(e.a, e.b).expect("source edges are unique per pair");
        }
        g
    }

    /// Subgraph over the measured (non-latent) nodes, keeping only edges
    /// whose both ends are measured.
    pub fn measured_subgraph(&self) -> Graph {
        let keep = self.measured_indices();
        let mut remap = HashMap::with_capacity(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            remap.insert(old, new);
        }
        let names: Vec<String> = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut g = Graph::new(names).expect("node names already validated");
        for e in self.edges() {
            if let (Some(&a), Some(&b)) = (remap.get(&e.a), remap.get(&e.b)) {
                g.insert_edge(a, b, e.mark_a, e.mark_b).expect("source edges are unique per pair");
            }
        }
        g
    }

    /// All nodes with a directed path into the set, plus the set itself.
    pub fn ancestors_of_set(&self, set: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = set.iter().copied().collect();
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(i) = queue.pop_front() {
            for p in self.parents_of(i) {
                if seen.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }
}
