//! Path choice functions: one simple path per unordered vertex pair, closed
//! under taking sub-paths.
//!
//! Routes are stored once per unordered pair `{v, w}` with `v < w`, oriented
//! from `v` to `w`; the route for `(w, v)` is the same path read backwards.

mod dominance;
mod enumerate;
mod extract;

pub use dominance::{classify_dominance, graph_completion, DominanceReport};
pub use enumerate::{enumerate_pcfs, enumerate_pcfs_filtered, DominanceFilter, PCF_ENUMERATION_CAP};
pub use extract::{extract_paths, repair_consistency};

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A simple path, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn edge_count(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// Sum of edge weights, accumulated from the first vertex.
    pub fn cost(&self, g: &WeightedGraph) -> f64 {
        self.edges()
            .map(|(a, b)| g.weight(a, b).expect("route edges belong to the graph"))
            .sum()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    /// Same path oriented from its smaller endpoint.
    pub fn canonical(mut self) -> Self {
        if self.first() > self.last() {
            self.0.reverse();
        }
        self
    }

    /// Sub-path between positions `i` and `j` (either order), oriented from
    /// its smaller endpoint.
    pub fn sub_path(&self, i: usize, j: usize) -> Path {
        let (lo, hi) = (i.min(j), i.max(j));
        Path(self.0[lo..=hi].to_vec()).canonical()
    }

    /// Whether this path is a single graph edge.
    pub fn is_single_edge(&self) -> bool {
        self.0.len() == 2
    }

    fn validate(&self, g: &WeightedGraph) -> std::result::Result<(), &'static str> {
        if self.0.len() < 2 {
            return Err("route needs at least one edge");
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.0 {
            if v >= g.vertex_count() {
                return Err("vertex out of range");
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err("repeated vertex");
            }
        }
        if self.edges().any(|(a, b)| !g.has_edge(a, b)) {
            return Err("consecutive vertices are not adjacent");
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the unordered pair `{a, b}` in canonical order.
pub(crate) fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (v, w) = (a.min(b), a.max(b));
    v * n - v * (v + 1) / 2 + (w - v - 1)
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |v| ((v + 1)..n).map(move |w| (v, w)))
}

/// An assignment of one simple path to every unordered pair of distinct
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathChoiceFunction {
    n: usize,
    id: String,
    routes: Vec<Path>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyViolation {
    /// Pair whose route contains the sub-pair.
    pub pair: (usize, usize),
    /// Pair whose stored route disagrees with the enclosing sub-path.
    pub sub_pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub ok: bool,
    pub violations: Vec<ConsistencyViolation>,
}

impl PathChoiceFunction {
    /// Builds a path choice function from routes given in any orientation.
    /// Every unordered pair must receive exactly one route. Consistency is
    /// not required here; see [`PathChoiceFunction::check_consistency`].
    pub fn from_routes(
        g: &WeightedGraph,
        id: impl Into<String>,
        routes: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let n = g.vertex_count();
        let mut slots: Vec<Option<Path>> = vec![None; pair_count(n)];
        for r in routes {
            let path = Path::new(r);
            let (u, v) = (
                path.0.first().copied().unwrap_or(0),
                path.0.last().copied().unwrap_or(0),
            );
            path.validate(g).map_err(|reason| Error::InvalidRoute { u, v, reason })?;
            let path = path.canonical();
            let slot = &mut slots[pair_index(n, u, v)];
            if slot.is_some() {
                return Err(Error::InvalidRoute {
                    u,
                    v,
                    reason: "pair assigned twice",
                });
            }
            *slot = Some(path);
        }
        let mut out = Vec::with_capacity(slots.len());
        for ((u, v), slot) in pairs(n).zip(slots) {
            out.push(slot.ok_or(Error::PartialAssignment { u, v })?);
        }
        Ok(PathChoiceFunction {
            n,
            id: id.into(),
            routes: out,
        })
    }

    /// Routes already canonical and indexed by pair.
    pub(crate) fn from_canonical(n: usize, id: impl Into<String>, routes: Vec<Path>) -> Self {
        debug_assert_eq!(routes.len(), pair_count(n));
        PathChoiceFunction {
            n,
            id: id.into(),
            routes,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Stored route for `{a, b}`, oriented from the smaller endpoint.
    pub fn get(&self, a: usize, b: usize) -> &Path {
        &self.routes[pair_index(self.n, a, b)]
    }

    /// Route oriented from `a` to `b`.
    pub fn route(&self, a: usize, b: usize) -> Path {
        let p = self.get(a, b).clone();
        if a > b {
            Path(p.0.into_iter().rev().collect())
        } else {
            p
        }
    }

    /// `(v, w, route)` for every pair with `v < w`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Path)> {
        pairs(self.n).zip(&self.routes).map(|((v, w), p)| (v, w, p))
    }

    pub(crate) fn routes(&self) -> &[Path] {
        &self.routes
    }

    /// Checks that the routes are simple paths of `g`.
    pub fn check_graph(&self, g: &WeightedGraph) -> Result<()> {
        if g.vertex_count() != self.n {
            return Err(Error::DimensionMismatch {
                left: g.vertex_count(),
                right: self.n,
            });
        }
        for (u, v, p) in self.iter() {
            p.validate(g).map_err(|reason| Error::InvalidRoute { u, v, reason })?;
        }
        Ok(())
    }

    /// Lists every `(pair, sub_pair)` where the stored route of `sub_pair`
    /// differs from the corresponding sub-path of `pair`'s route.
    pub fn check_consistency(&self) -> ConsistencyReport {
        let mut violations = Vec::new();
        for (v, w, p) in self.iter() {
            let verts = p.vertices();
            let last = verts.len() - 1;
            for i in 0..last {
                for j in (i + 1)..=last {
                    if i == 0 && j == last {
                        continue;
                    }
                    if !self.agrees_with_segment(&verts[i..=j]) {
                        violations.push(ConsistencyViolation {
                            pair: (v, w),
                            sub_pair: (verts[i].min(verts[j]), verts[i].max(verts[j])),
                        });
                    }
                }
            }
        }
        ConsistencyReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.iter().all(|(_, _, p)| {
            let verts = p.vertices();
            (0..verts.len()).all(|i| ((i + 1)..verts.len()).all(|j| self.agrees_with_segment(&verts[i..=j])))
        })
    }

    pub(crate) fn require_consistent(&self) -> Result<()> {
        let report = self.check_consistency();
        if report.ok {
            Ok(())
        } else {
            Err(Error::Inconsistent {
                count: report.violations.len(),
            })
        }
    }

    /// Whether the stored route between the segment's endpoints is exactly
    /// the segment.
    fn agrees_with_segment(&self, segment: &[usize]) -> bool {
        let (a, b) = (segment[0], segment[segment.len() - 1]);
        let stored = self.get(a, b).vertices();
        if a < b {
            stored == segment
        } else {
            stored.iter().eq(segment.iter().rev())
        }
    }

    /// Routes that are not a proper sub-path of another route, sorted.
    pub fn maximal_paths(&self) -> Result<Vec<Path>> {
        self.require_consistent()?;
        // Under consistency, a route is a sub-path of `p` iff both of its
        // endpoints lie on `p`.
        let mut out: Vec<Path> = self
            .iter()
            .filter(|&(v, w, q)| {
                !self.iter().any(|(_, _, p)| {
                    p.edge_count() > q.edge_count() && p.position(v).is_some() && p.position(w).is_some()
                })
            })
            .map(|(_, _, q)| q.clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// Rebuilds a path choice function from maximal paths by taking every
    /// sub-path. Conflicting or missing pairs are errors.
    pub fn from_maximal_paths(g: &WeightedGraph, id: impl Into<String>, maximal: &[Path]) -> Result<Self> {
        let n = g.vertex_count();
        let mut slots: Vec<Option<Path>> = vec![None; pair_count(n)];
        for p in maximal {
            p.validate(g).map_err(|reason| Error::InvalidRoute {
                u: p.first(),
                v: p.last(),
                reason,
            })?;
            let len = p.vertices().len();
            for i in 0..len {
                for j in (i + 1)..len {
                    let sub = p.sub_path(i, j);
                    let slot = &mut slots[pair_index(n, sub.first(), sub.last())];
                    match slot {
                        Some(existing) if *existing != sub => {
                            return Err(Error::Inconsistent { count: 1 });
                        }
                        Some(_) => {}
                        None => *slot = Some(sub),
                    }
                }
            }
        }
        let mut routes = Vec::with_capacity(slots.len());
        for ((u, v), slot) in pairs(n).zip(slots) {
            routes.push(slot.ok_or(Error::PartialAssignment { u, v })?);
        }
        Ok(PathChoiceFunction::from_canonical(n, id, routes))
    }

    /// JSON document. With `Some(g)` the graph is written inline, otherwise
    /// the function's id is used as a graph reference.
    pub fn to_json_value(&self, g: Option<&WeightedGraph>) -> Value {
        let graph = match g {
            Some(g) => graph_json(g),
            None => Value::String(self.id.clone()),
        };
        let paths: Vec<Value> = self
            .iter()
            .map(|(u, v, p)| json!({ "pair": [u, v], "route": p.vertices() }))
            .collect();
        json!({ "graph": graph, "paths": paths })
    }

    /// Parses a PCF JSON document. An inline `graph` object takes precedence;
    /// a string reference requires `fallback`.
    pub fn from_json(text: &str, fallback: Option<&WeightedGraph>) -> Result<(WeightedGraph, Self)> {
        #[derive(Deserialize)]
        struct Entry {
            pair: (usize, usize),
            route: Vec<usize>,
        }
        #[derive(Deserialize)]
        struct Doc {
            graph: Value,
            paths: Vec<Entry>,
        }
        let doc: Doc = serde_json::from_str(text)?;
        let (g, id) = match &doc.graph {
            Value::Object(_) => (graph_from_json(&doc.graph)?, "inline".to_string()),
            Value::String(id) => (
                fallback.cloned().ok_or_else(|| Error::InvalidParameter {
                    name: "graph",
                    reason: format!("PCF references graph `{id}` but no graph was supplied"),
                })?,
                id.clone(),
            ),
            _ => {
                return Err(Error::Json("`graph` must be an object or a string".into()));
            }
        };
        for e in &doc.paths {
            let ends = (e.route.first().copied(), e.route.last().copied());
            let (a, b) = e.pair;
            if ends != (Some(a), Some(b)) && ends != (Some(b), Some(a)) {
                return Err(Error::InvalidRoute {
                    u: a,
                    v: b,
                    reason: "route endpoints do not match pair",
                });
            }
        }
        let pcf = PathChoiceFunction::from_routes(&g, id, doc.paths.into_iter().map(|e| e.route))?;
        Ok((g, pcf))
    }
}

pub(crate) fn graph_json(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g.edges().iter().map(|e| json!([e.u, e.v, e.w])).collect();
    json!({ "n": g.vertex_count(), "edges": edges })
}

pub(crate) fn graph_from_json(v: &Value) -> Result<WeightedGraph> {
    #[derive(Deserialize)]
    struct Inline {
        n: usize,
        edges: Vec<(usize, usize, f64)>,
    }
    let inline: Inline = serde_json::from_value(v.clone())?;
    WeightedGraph::new(inline.n, inline.edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;

    fn c4() -> WeightedGraph {
        cycle_graph(4, &[1.0; 4]).unwrap()
    }

    #[test]
    fn pair_indexing_is_canonical() {
        let n = 5;
        for (i, (v, w)) in pairs(n).enumerate() {
            assert_eq!(pair_index(n, v, w), i);
            assert_eq!(pair_index(n, w, v), i);
        }
        assert_eq!(pair_count(n), 10);
    }

    #[test]
    fn tree_routes_are_consistent() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0)]).unwrap();
        let pcf = PathChoiceFunction::from_routes(
            &g,
            "tree",
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 3], vec![1, 2], vec![1, 3], vec![2, 1, 3]],
        )
        .unwrap();
        assert!(pcf.check_consistency().ok);
        assert!(pcf.is_consistent());
    }

    #[test]
    fn detects_violation_inside_enclosing_route() {
        // Vertices v1..v4 are 0..3. g(v1,v3) = v1 v2 v3 but g(v1,v2) = v1 v4 v3 v2.
        let pcf = PathChoiceFunction::from_routes(
            &c4(),
            "bad",
            vec![vec![0, 3, 2, 1], vec![0, 1, 2], vec![0, 3], vec![1, 2], vec![1, 0, 3], vec![2, 3]],
        )
        .unwrap();
        let report = pcf.check_consistency();
        assert!(!report.ok);
        assert!(report.violations.contains(&ConsistencyViolation {
            pair: (0, 2),
            sub_pair: (0, 1),
        }));
        assert!(!pcf.is_consistent());
    }

    #[test]
    fn construction_errors() {
        let g = c4();
        assert!(matches!(
            PathChoiceFunction::from_routes(&g, "", vec![vec![0, 1]]),
            Err(Error::PartialAssignment { .. })
        ));
        assert!(matches!(
            PathChoiceFunction::from_routes(&g, "", vec![vec![0, 2]]),
            Err(Error::InvalidRoute { .. })
        ));
        assert!(matches!(
            PathChoiceFunction::from_routes(&g, "", vec![vec![0, 1, 0, 3]]),
            Err(Error::InvalidRoute { .. })
        ));
        assert!(matches!(
            PathChoiceFunction::from_routes(&g, "", vec![vec![0, 1], vec![1, 0]]),
            Err(Error::InvalidRoute { .. })
        ));
    }

    #[test]
    fn maximal_paths_of_path_graph() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let pcf = extract_paths(&g, crate::metric::PathMode::Weight).unwrap();
        assert_eq!(pcf.maximal_paths().unwrap(), vec![Path::new(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn maximal_paths_of_single_edge_system() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let pcf = PathChoiceFunction::from_routes(&g, "edges", vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let max = pcf.maximal_paths().unwrap();
        assert_eq!(max.len(), 3);
        assert!(max.iter().all(Path::is_single_edge));
    }

    #[test]
    fn json_round_trip_inline_and_reference() {
        let g = c4();
        let pcf = extract_paths(&g, crate::metric::PathMode::Weight).unwrap();
        let text = pcf.to_json_value(Some(&g)).to_string();
        let (g2, back) = PathChoiceFunction::from_json(&text, None).unwrap();
        assert_eq!(g2, g);
        assert_eq!(back.routes, pcf.routes);

        let by_ref = pcf.to_json_value(None).to_string();
        assert!(PathChoiceFunction::from_json(&by_ref, None).is_err());
        let (_, back) = PathChoiceFunction::from_json(&by_ref, Some(&g)).unwrap();
        assert_eq!(back.routes, pcf.routes);
    }
}
