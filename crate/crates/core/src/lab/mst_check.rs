use serde::Serialize;

use crate::error::Result;
use crate::graph::{enumerate_msts, SpanningTree, WeightedGraph};
use crate::paths::{classify_dominance, graph_completion, PathChoiceFunction};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MstInvarianceReport {
    pub equal: bool,
    pub weight_dominated: bool,
    pub mst_g: Vec<SpanningTree>,
    pub mst_kg: Vec<SpanningTree>,
}

/// Compares the full MST sets of `g` and of its completion under `pcf`.
/// Reports only; the caller decides whether inequality is a violation.
pub fn check_mst_invariance(g: &WeightedGraph, pcf: &PathChoiceFunction) -> Result<MstInvarianceReport> {
    let weight_dominated = classify_dominance(g, pcf)?.weight_dominated;
    let kg = graph_completion(g, pcf)?;
    let mst_g = enumerate_msts(g)?;
    let mst_kg = enumerate_msts(&kg)?;
    // Both lists come back sorted by edge set.
    let equal = mst_g.len() == mst_kg.len() && mst_g.iter().zip(&mst_kg).all(|(a, b)| a.key() == b.key());
    Ok(MstInvarianceReport {
        equal,
        weight_dominated,
        mst_g,
        mst_kg,
    })
}
