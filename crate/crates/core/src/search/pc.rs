//! The PC family: plain, stable, conservative, and conservative-stable.

use super::{
    fas, orient_colliders_conservative, orient_colliders_standard, SearchError, TripleMarks,
};
use crate::graph::{meek_closure, Graph};
use crate::oracle::IndependenceTest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcFlavor {
    Pc,
    PcStable,
    Cpc,
    CpcStable,
}

impl PcFlavor {
    pub fn stable(self) -> bool {
        matches!(self, PcFlavor::PcStable | PcFlavor::CpcStable)
    }

    pub fn conservative(self) -> bool {
        matches!(self, PcFlavor::Cpc | PcFlavor::CpcStable)
    }
}

#[derive(Debug)]
pub struct PcOutput {
    pub graph: Graph,
    pub triples: TripleMarks,
    pub tests_run: u64,
}

/// Adjacency search, collider orientation, then orientation propagation.
/// With `initial` supplied, only its adjacencies are candidate edges.
pub fn pc_search(
    flavor: PcFlavor,
    test: &dyn IndependenceTest,
    names: &[String],
    depth: i64,
    initial: Option<&Graph>,
) -> Result<PcOutput, SearchError> {
    let result = fas(test, names, depth, flavor.stable(), initial)?;
    let mut graph = result.skeleton;
    let triples = if flavor.conservative() {
        orient_colliders_conservative(&mut graph, test, depth)?
    } else {
        orient_colliders_standard(&mut graph, &result.sepsets, Some((test, depth)))?
    };
    let graph = meek_closure(&graph);
    Ok(PcOutput { graph, triples, tests_run: result.tests_run })
}
