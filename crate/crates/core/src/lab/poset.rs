use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{compare_pointwise, distance_from_paths, DistanceMatrix};
use crate::paths::{enumerate_pcfs_filtered, DominanceFilter, Path, PathChoiceFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PosetExtremes {
    pub least: Option<usize>,
    pub greatest: Option<usize>,
}

/// Indices of a least and a greatest element under the pointwise order,
/// the smallest such index when equal matrices repeat.
pub fn poset_extremes(distances: &[DistanceMatrix]) -> Result<PosetExtremes> {
    if let Some(first) = distances.first() {
        if let Some(bad) = distances.iter().find(|d| d.n() != first.n()) {
            return Err(Error::DimensionMismatch {
                left: first.n(),
                right: bad.n(),
            });
        }
    }
    let mut le = vec![vec![false; distances.len()]; distances.len()];
    for (i, a) in distances.iter().enumerate() {
        for (j, b) in distances.iter().enumerate() {
            le[i][j] = compare_pointwise(a, b)?.is_le();
        }
    }
    let least = (0..distances.len()).find(|&i| le[i].iter().all(|&x| x));
    let greatest = (0..distances.len()).find(|&i| (0..distances.len()).all(|j| le[j][i]));
    Ok(PosetExtremes { least, greatest })
}

/// Distinct distances of all cost-dominated path choice functions on `g`,
/// each paired with one path choice function realizing it.
pub fn cost_dominated_distances(g: &WeightedGraph) -> Result<Vec<(PathChoiceFunction, DistanceMatrix)>> {
    let mut out: Vec<(PathChoiceFunction, DistanceMatrix)> = Vec::new();
    for pcf in enumerate_pcfs_filtered(g, DominanceFilter::CostDominated)? {
        let d = distance_from_paths(g, &pcf)?;
        if !out.iter().any(|(_, e)| e.values() == d.values()) {
            out.push((pcf, d));
        }
    }
    Ok(out)
}

/// Two cost-dominated path choice functions on a cycle that no
/// path-representable distance bounds from above.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoGreatestCertificate {
    /// Control vertex and the consecutive pair `(v_i, v_{i+1})`.
    pub v0: usize,
    pub vi: usize,
    pub vj: usize,
    pub route_1: (Path, Path),
    pub route_2: (Path, Path),
}

fn cycle_arc(n: usize, from: usize, to: usize, step: usize) -> Vec<usize> {
    let mut out = vec![from];
    let mut v = from;
    while v != to {
        v = (v + step) % n;
        out.push(v);
    }
    out
}

/// Searches the cycle `v0, ..., v_{n-1}` for a control vertex and a
/// consecutive pair, both non-adjacent to it, whose two routings cannot be
/// dominated at once.
///
/// With `a` the cost of `v0 -> v_i` avoiding `v_{i+1}`, `b` the cost of
/// `v0 -> v_{i+1}` avoiding `v_i` and `c` the weight of `(v_i, v_{i+1})`, an
/// upper bound must pick, for each of the two pairs, a route at least as
/// long as both choices. When `|a - b| < c` each pair has exactly one such
/// route and the two routes disagree on the sub-pair they share.
pub fn cycle_no_greatest_certificate(g: &WeightedGraph) -> Option<NoGreatestCertificate> {
    let n = g.vertex_count();
    if n < 5 || g.edge_count() != n || (0..n).any(|v| !g.has_edge(v, (v + 1) % n)) {
        return None;
    }
    let cost = |p: &[usize]| p.windows(2).map(|e| g.weight(e[0], e[1]).unwrap()).sum::<f64>();
    for v0 in 0..n {
        for off in 2..(n - 2) {
            let vi = (v0 + off) % n;
            let vj = (vi + 1) % n;
            let a_path = cycle_arc(n, v0, vi, 1);
            let b_path = cycle_arc(n, v0, vj, n - 1);
            let (a, b, c) = (cost(&a_path), cost(&b_path), g.weight(vi, vj).unwrap());
            if (a - b).abs() < c {
                let mut a_ext = a_path.clone();
                a_ext.push(vj);
                let mut b_ext = b_path.clone();
                b_ext.push(vi);
                return Some(NoGreatestCertificate {
                    v0,
                    vi,
                    vj,
                    route_1: (Path::new(a_path), Path::new(a_ext)),
                    route_2: (Path::new(b_ext), Path::new(b_path)),
                });
            }
        }
    }
    None
}
