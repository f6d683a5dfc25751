//! Graph distances: minimum total weight (`d_weight`), minimum weight among
//! minimum-hop paths (`d_edge`), and distances induced by an arbitrary path
//! choice function.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::paths::PathChoiceFunction;

/// Which optimal-path definition to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathMode {
    /// Minimum total weight.
    Weight,
    /// Minimum hop count, then minimum total weight.
    Edge,
}

impl fmt::Display for PathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathMode::Weight => "weight",
            PathMode::Edge => "edge",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Weight,
    Edge,
    PathSystem(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Weight => f.write_str("weight"),
            Provenance::Edge => f.write_str("edge"),
            Provenance::PathSystem(id) if id.is_empty() => f.write_str("path-system"),
            Provenance::PathSystem(id) => write!(f, "path-system:{id}"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric all-pairs distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
    provenance: Provenance,
    hop_counts: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct DistanceMatrixJson<'a> {
    n: usize,
    provenance: &'a Provenance,
    values: Vec<&'a [f64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hop_counts: Option<Vec<&'a [u32]>>,
}

impl Serialize for DistanceMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistanceMatrixJson {
            n: self.n,
            provenance: &self.provenance,
            values: self.values.chunks(self.n).collect(),
            hop_counts: self.hop_counts.as_ref().map(|h| h.chunks(self.n).collect()),
        }
        .serialize(s)
    }
}

impl DistanceMatrix {
    /// Builds a matrix from rows, checking that it is square and symmetric with a zero diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>, provenance: Provenance) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            values.extend_from_slice(row);
        }
        let m = DistanceMatrix {
            n,
            values,
            provenance,
            hop_counts: None,
        };
        for v in 0..n {
            if m.get(v, v) != 0.0 {
                return Err(Error::InvalidParameter {
                    name: "distance matrix",
                    reason: format!("nonzero diagonal at {v}"),
                });
            }
            for w in 0..v {
                if m.get(v, w) != m.get(w, v) {
                    return Err(Error::InvalidParameter {
                        name: "distance matrix",
                        reason: format!("asymmetric at ({w}, {v})"),
                    });
                }
            }
        }
        Ok(m)
    }

    fn zeros(n: usize, provenance: Provenance) -> Self {
        DistanceMatrix {
            n,
            values: vec![0.0; n * n],
            provenance,
            hop_counts: None,
        }
    }

    fn set(&mut self, v: usize, w: usize, d: f64) {
        self.values[v * self.n + w] = d;
        self.values[w * self.n + v] = d;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: usize, w: usize) -> f64 {
        self.values[v * self.n + w]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Minimum hop counts `m_vw`; present for `d_edge` only.
    pub fn hop_count(&self, v: usize, w: usize) -> Option<u32> {
        self.hop_counts.as_ref().map(|h| h[v * self.n + w])
    }

    /// Row-major entries.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.values[v * self.n..(v + 1) * self.n]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("distance matrix serializes")
    }
}

/// Single-source optimal-path tree under `mode`.
///
/// Among predecessors with the same optimal key the smallest vertex id is
/// kept, so the tree is unique.
#[derive(Debug, Clone)]
pub(crate) struct ShortestPathTree {
    pub dist: Vec<f64>,
    pub hops: Vec<u32>,
    pub pred: Vec<Option<usize>>,
}

impl ShortestPathTree {
    /// Route from the source to `target`, source first.
    pub fn route_to(&self, target: usize) -> Vec<usize> {
        let mut route = vec![target];
        let mut cur = target;
        while let Some(p) = self.pred[cur] {
            route.push(p);
            cur = p;
        }
        route.reverse();
        route
    }
}

fn key_less(mode: PathMode, hops_a: u32, dist_a: f64, hops_b: u32, dist_b: f64) -> std::cmp::Ordering {
    match mode {
        PathMode::Weight => dist_a.total_cmp(&dist_b),
        PathMode::Edge => hops_a.cmp(&hops_b).then(dist_a.total_cmp(&dist_b)),
    }
}

pub(crate) fn shortest_path_tree(g: &WeightedGraph, source: usize, mode: PathMode) -> ShortestPathTree {
    use std::cmp::Ordering;
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![u32::MAX; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = 0.0;
    hops[source] = 0;

    // Dense O(n^2) selection; graphs here are small.
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if done[v] || hops[v] == u32::MAX {
                continue;
            }
            best = match best {
                Some(b) if key_less(mode, hops[b], dist[b], hops[v], dist[v]) != Ordering::Greater => Some(b),
                _ => Some(v),
            };
        }
        let Some(u) = best else { break };
        done[u] = true;
        for &(x, w) in g.neighbors(u) {
            if done[x] {
                continue;
            }
            let (ch, cd) = (hops[u] + 1, dist[u] + w);
            let better = hops[x] == u32::MAX
                || match key_less(mode, ch, cd, hops[x], dist[x]) {
                    Ordering::Less => true,
                    Ordering::Equal => pred[x].is_some_and(|p| u < p),
                    Ordering::Greater => false,
                };
            if better {
                hops[x] = ch;
                dist[x] = cd;
                pred[x] = Some(u);
            }
        }
    }
    ShortestPathTree { dist, hops, pred }
}

fn optimal_distances(g: &WeightedGraph, mode: PathMode) -> Result<DistanceMatrix> {
    g.require_connected()?;
    let n = g.vertex_count();
    let provenance = match mode {
        PathMode::Weight => Provenance::Weight,
        PathMode::Edge => Provenance::Edge,
    };
    let mut m = DistanceMatrix::zeros(n, provenance);
    let mut hop_counts = vec![0u32; n * n];
    for s in 0..n {
        let tree = shortest_path_tree(g, s, mode);
        for t in (s + 1)..n {
            m.set(s, t, tree.dist[t]);
            hop_counts[s * n + t] = tree.hops[t];
            hop_counts[t * n + s] = tree.hops[t];
        }
    }
    if mode == PathMode::Edge {
        m.hop_counts = Some(hop_counts);
    }
    Ok(m)
}

/// Minimum total edge weight over all paths.
pub fn d_weight(g: &WeightedGraph) -> Result<DistanceMatrix> {
    optimal_distances(g, PathMode::Weight)
}

/// Minimum total weight among the paths with the fewest edges.
pub fn d_edge(g: &WeightedGraph) -> Result<DistanceMatrix> {
    optimal_distances(g, PathMode::Edge)
}

pub fn distance_for_mode(g: &WeightedGraph, mode: PathMode) -> Result<DistanceMatrix> {
    optimal_distances(g, mode)
}

/// Sum of edge weights along each chosen route. Routes are summed from
/// their smaller endpoint.
pub fn distance_from_paths(g: &WeightedGraph, pcf: &PathChoiceFunction) -> Result<DistanceMatrix> {
    pcf.check_graph(g)?;
    let report = pcf.check_consistency();
    if !report.ok {
        return Err(Error::Inconsistent {
            count: report.violations.len(),
        });
    }
    let n = g.vertex_count();
    let mut m = DistanceMatrix::zeros(n, Provenance::PathSystem(pcf.id().to_string()));
    for (v, w, route) in pcf.iter() {
        m.set(v, w, route.cost(g));
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartialOrderResult {
    Equal,
    /// First ≤ second everywhere, strictly somewhere.
    #[serde(rename = "le")]
    LE,
    #[serde(rename = "ge")]
    GE,
    Incomparable,
}

impl PartialOrderResult {
    /// `Equal` or `LE`.
    pub fn is_le(self) -> bool {
        matches!(self, PartialOrderResult::Equal | PartialOrderResult::LE)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, PartialOrderResult::Equal | PartialOrderResult::GE)
    }
}

/// Entrywise comparison with exact equality.
pub fn compare_pointwise(d1: &DistanceMatrix, d2: &DistanceMatrix) -> Result<PartialOrderResult> {
    if d1.n != d2.n {
        return Err(Error::DimensionMismatch { left: d1.n, right: d2.n });
    }
    let mut less = false;
    let mut greater = false;
    for (a, b) in d1.values.iter().zip(&d2.values) {
        if a < b {
            less = true;
        } else if a > b {
            greater = true;
        }
    }
    Ok(match (less, greater) {
        (false, false) => PartialOrderResult::Equal,
        (true, false) => PartialOrderResult::LE,
        (false, true) => PartialOrderResult::GE,
        (true, true) => PartialOrderResult::Incomparable,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricReport {
    pub symmetric: bool,
    /// Zero exactly on the diagonal.
    pub identity: bool,
    pub triangle: bool,
}

/// Checks the metric axioms over every pair and triple.
pub fn metric_axioms(d: &DistanceMatrix) -> MetricReport {
    let n = d.n;
    let mut r = MetricReport {
        symmetric: true,
        identity: true,
        triangle: true,
    };
    for a in 0..n {
        for b in 0..n {
            let dab = d.get(a, b);
            if dab != d.get(b, a) {
                r.symmetric = false;
            }
            if (a == b) != (dab == 0.0) {
                r.identity = false;
            }
            for c in 0..n {
                if d.get(a, c) > dab + d.get(b, c) {
                    r.triangle = false;
                }
            }
        }
    }
    r
}
