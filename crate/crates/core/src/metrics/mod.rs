//! Performance statistics over (comparison graph, estimated graph) pairs,
//! normalization onto [0, 1], and the weighted utility used to rank rows.
//!
//! Each statistic is a [`Statistic`] strategy looked up by abbreviation;
//! the report simply walks whatever list the user registered.

use crate::graph::{Graph, Mark};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("graphs have different node sets (`{0}` is not shared)")]
    NodeSetMismatch(String),
    #[error("no statistic registered under `{0}`")]
    UnknownStatistic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

/// Map estimated-graph node indices onto comparison-graph indices by name.
fn index_map(cmp: &Graph, est: &Graph) -> Result<Vec<usize>, MetricsError> {
    if cmp.node_count() != est.node_count() {
        let name = if cmp.node_count() > est.node_count() {
            cmp.names().iter().find(|n| est.index_of(n).is_none())
        } else {
            est.names().iter().find(|n| cmp.index_of(n).is_none())
        };
        return Err(MetricsError::NodeSetMismatch(name.cloned().unwrap_or_default()));
    }
    cmp.names()
        .iter()
        .map(|n| est.index_of(n).ok_or_else(|| MetricsError::NodeSetMismatch(n.clone())))
        .collect()
}

/// Confusion counts over unordered node pairs, a positive being adjacency.
pub fn adjacency_confusion(cmp: &Graph, est: &Graph) -> Result<ConfusionCounts, MetricsError> {
    let map = index_map(cmp, est)?;
    let p = cmp.node_count();
    let mut counts = ConfusionCounts { tp: 0, fp: 0, fn_: 0, tn: 0 };
    for a in 0..p {
        for b in (a + 1)..p {
            let in_cmp = cmp.is_adjacent(a, b);
            let in_est = est.is_adjacent(map[a], map[b]);
            match (in_cmp, in_est) {
                (true, true) => counts.tp += 1,
                (false, true) => counts.fp += 1,
                (true, false) => counts.fn_ += 1,
                (false, false) => counts.tn += 1,
            }
        }
    }
    Ok(counts)
}

/// Confusion counts over ordered node pairs (a, b), a positive being an
/// edge between them carrying an arrow mark at `b`.
pub fn arrowhead_confusion(cmp: &Graph, est: &Graph) -> Result<ConfusionCounts, MetricsError> {
    let map = index_map(cmp, est)?;
    let p = cmp.node_count();
    let mut counts = ConfusionCounts { tp: 0, fp: 0, fn_: 0, tn: 0 };
    for a in 0..p {
        for b in 0..p {
            if a == b {
                continue;
            }
            let in_cmp = cmp.mark_at(a, b) == Some(Mark::Arrow);
            let in_est = est.mark_at(map[a], map[b]) == Some(Mark::Arrow);
            match (in_cmp, in_est) {
                (true, true) => counts.tp += 1,
                (false, true) => counts.fp += 1,
                (true, false) => counts.fn_ += 1,
                (false, false) => counts.tn += 1,
            }
        }
    }
    Ok(counts)
}

fn precision(c: ConfusionCounts) -> f64 {
    ratio(c.tp, c.tp + c.fp)
}

fn recall(c: ConfusionCounts) -> f64 {
    ratio(c.tp, c.tp + c.fn_)
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        f64::NAN
    } else {
        num as f64 / den as f64
    }
}

/// Matthews correlation; 0 when the denominator vanishes. Products are
/// taken in u128 so p = 100 (tn around 4950 per slot) cannot overflow.
fn matthews(c: ConfusionCounts) -> f64 {
    let (tp, fp, fn_, tn) = (c.tp as u128, c.fp as u128, c.fn_ as u128, c.tn as u128);
    let den2 = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
    if den2 == 0 {
        return 0.0;
    }
    let num = tp as f64 * tn as f64 - fp as f64 * fn_ as f64;
    num / (den2 as f64).sqrt()
}

fn f1(c: ConfusionCounts) -> f64 {
    let p = precision(c);
    let r = recall(c);
    if p.is_nan() || r.is_nan() {
        return f64::NAN;
    }
    if p + r == 0.0 {
        return 0.0;
    }
    2.0 * p * r / (p + r)
}

/// Structural Hamming distance: one unit per unordered pair whose
/// adjacency presence differs, or which both graphs join with different
/// endpoint-mark pairs. Each pair counts at most once.
pub fn structural_hamming_distance(cmp: &Graph, est: &Graph) -> Result<u64, MetricsError> {
    let map = index_map(cmp, est)?;
    let p = cmp.node_count();
    let mut shd = 0u64;
    for a in 0..p {
        for b in (a + 1)..p {
            let cmp_edge = cmp.edge_between(a, b).map(|e| (e.mark_a, e.mark_b));
            let est_edge = est.edge_between(map[a], map[b]).map(|e| {
                // Normalize marks to cmp's (a, b) orientation.
                if map[a] < map[b] {
                    (e.mark_a, e.mark_b)
                } else {
                    (e.mark_b, e.mark_a)
                }
            });
            if cmp_edge != est_edge {
                shd += 1;
            }
        }
    }
    Ok(shd)
}

/// One registered performance statistic.
pub trait Statistic {
    fn abbreviation(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn value(&self, cmp: &Graph, est: &Graph, elapsed_seconds: f64) -> f64;
    /// Map a raw value onto [0, 1], higher better. `pair_count` is the
    /// number of unordered node pairs of the comparison graph.
    fn norm_value(&self, value: f64, pair_count: f64) -> f64;
    /// Line printed in the report legend.
    fn legend_line(&self) -> String {
        format!("{} = {}", self.abbreviation(), self.description())
    }
}

macro_rules! confusion_statistic {
    ($name:ident, $abbrev:literal, $desc:literal, $confusion:ident, $metric:ident) => {
        pub struct $name;

        impl Statistic for $name {
            fn abbreviation(&self) -> &'static str {
                $abbrev
            }

            fn description(&self) -> &'static str {
                $desc
            }

            fn value(&self, cmp: &Graph, est: &Graph, _elapsed: f64) -> f64 {
                match $confusion(cmp, est) {
                    Ok(c) => $metric(c),
                    Err(_) => f64::NAN,
                }
            }

            fn norm_value(&self, value: f64, _pair_count: f64) -> f64 {
                normalize_identity_or_mcc(value, $abbrev)
            }
        }
    };
}

fn normalize_identity_or_mcc(value: f64, abbrev: &str) -> f64 {
    if value.is_nan() {
        return 0.0;
    }
    if abbrev.starts_with("Mc") {
        (value + 1.0) / 2.0
    } else {
        value
    }
}

confusion_statistic!(AdjacencyPrecision, "AP", "Adjacency Precision", adjacency_confusion, precision);
confusion_statistic!(AdjacencyRecall, "AR", "Adjacency Recall", adjacency_confusion, recall);
confusion_statistic!(ArrowheadPrecision, "AHP", "Arrowhead precision", arrowhead_confusion, precision);
confusion_statistic!(ArrowheadRecall, "AHR", "Arrowhead recall", arrowhead_confusion, recall);
confusion_statistic!(
    MatthewsCorrAdjacency,
    "McAdj",
    "Matthew's correlation coefficient for adjacencies",
    adjacency_confusion,
    matthews
);
confusion_statistic!(
    MatthewsCorrArrowhead,
    "McArrow",
    "Matthew's correlation coefficient for arrows",
    arrowhead_confusion,
    matthews
);
confusion_statistic!(F1Adjacency, "F1Adj", "F1 statistic for adjacencies", adjacency_confusion, f1);
confusion_statistic!(F1Arrowhead, "F1Arrow", "F1 statistic for arrows", arrowhead_confusion, f1);

pub struct Shd;

impl Statistic for Shd {
    fn abbreviation(&self) -> &'static str {
        "SHD"
    }

    fn description(&self) -> &'static str {
        "Structural Hamming Distance"
    }

    fn value(&self, cmp: &Graph, est: &Graph, _elapsed: f64) -> f64 {
        match structural_hamming_distance(cmp, est) {
            Ok(v) => v as f64,
            Err(_) => f64::NAN,
        }
    }

    fn norm_value(&self, value: f64, pair_count: f64) -> f64 {
        if value.is_nan() {
            return 0.0;
        }
        if pair_count <= 0.0 {
            return 1.0;
        }
        1.0 - (value / pair_count).min(1.0)
    }

    fn legend_line(&self) -> String {
        // Legend padding quirk kept for byte compatibility with existing
        // report consumers.
        format!("{}  = {}", self.abbreviation(), self.description())
    }
}

pub struct ElapsedTime;

impl Statistic for ElapsedTime {
    fn abbreviation(&self) -> &'static str {
        "E"
    }

    fn description(&self) -> &'static str {
        "Elapsed Time in Seconds"
    }

    fn value(&self, _cmp: &Graph, _est: &Graph, elapsed_seconds: f64) -> f64 {
        elapsed_seconds
    }

    fn norm_value(&self, value: f64, _pair_count: f64) -> f64 {
        // Negative values are the unavailable sentinel; they contribute
        // nothing rather than rewarding failure.
        if value.is_nan() || value < 0.0 {
            return 0.0;
        }
        1.0 / (1.0 + value)
    }
}

/// All built-in statistics in their catalog order.
pub fn all_statistics() -> Vec<Box<dyn Statistic>> {
    vec![
        Box::new(AdjacencyPrecision),
        Box::new(AdjacencyRecall),
        Box::new(ArrowheadPrecision),
        Box::new(ArrowheadRecall),
        Box::new(MatthewsCorrAdjacency),
        Box::new(MatthewsCorrArrowhead),
        Box::new(F1Adjacency),
        Box::new(F1Arrowhead),
        Box::new(Shd),
        Box::new(ElapsedTime),
    ]
}

pub fn statistic_by_abbreviation(abbrev: &str) -> Result<Box<dyn Statistic>, MetricsError> {
    all_statistics()
        .into_iter()
        .find(|s| s.abbreviation() == abbrev)
        .ok_or_else(|| MetricsError::UnknownStatistic(abbrev.to_string()))
}

/// Per-abbreviation weights in [0, 1].
pub type Weights = BTreeMap<String, f64>;

/// Weighted mean of normalized statistics: the sum of `w_i * f_i` over the
/// positively weighted statistics, divided by how many there are. NaN
/// normalized values arrive as 0 from `norm_value`.
pub fn utility(weights: &Weights, normalized: &HashMap<String, f64>) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (name, &w) in weights {
        if w > 0.0 {
            count += 1;
            if let Some(&f) = normalized.get(name) {
                sum += w * f;
            }
        }
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}
