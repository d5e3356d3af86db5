//! d-separation by reachability.
//!
//! A trail is walked from `x`, tracking whether each node was entered
//! through a parent (descending) or through a child (ascending). Chains and
//! forks pass through nodes outside the conditioning set; colliders pass
//! only through nodes that are in the conditioning set or have a descendant
//! in it. `y` is d-separated from `x` exactly when no walk reaches it.

use super::{Graph, GraphError};
use std::collections::BTreeSet;

impl Graph {
    /// True iff every path between `x` and `y` is blocked by `z`.
    ///
    /// The caller guarantees the graph is a DAG; `x != y` and neither may
    /// appear in `z`.
    pub fn d_separated(&self, x: usize, y: usize, z: &[usize]) -> Result<bool, GraphError> {
        if x == y {
            return Err(GraphError::IdenticalPair);
        }
        if z.contains(&x) || z.contains(&y) {
            return Err(GraphError::ConditioningOverlap);
        }
        let in_z: BTreeSet<usize> = z.iter().copied().collect();
        let anc_z = self.ancestors_of_set(z);

        // (node, entered_from_parent)
        let mut visited = vec![[false; 2]; self.node_count()];
        let mut stack: Vec<(usize, bool)> = vec![(x, false)];
        while let Some((node, from_parent)) = stack.pop() {
            let slot = usize::from(from_parent);
            if visited[node][slot] {
                continue;
            }
            visited[node][slot] = true;
            if node == y {
                return Ok(false);
            }
            if from_parent {
                if !in_z.contains(&node) {
                    for c in self.children_of(node) {
                        stack.push((c, true));
                    }
                }
                if anc_z.contains(&node) {
                    for p in self.parents_of(node) {
                        stack.push((p, false));
                    }
                }
            } else if !in_z.contains(&node) {
                for p in self.parents_of(node) {
                    stack.push((p, false));
                }
                for c in self.children_of(node) {
                    stack.push((c, true));
                }
            }
        }
        Ok(true)
    }

    pub fn d_separated_named(&self, x: &str, y: &str, z: &[&str]) -> Result<bool, GraphError> {
        let xi = self.require_index(x)?;
        let yi = self.require_index(y)?;
        let zi = z.iter().map(|n| self.require_index(n)).collect::<Result<Vec<_>, _>>()?;
        self.d_separated(xi, yi, &zi)
    }
}
