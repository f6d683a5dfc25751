//! Undirected, positively weighted simple graphs.
//!
//! Edges are kept in canonical order: lexicographic on
//! `(min endpoint, max endpoint)`. Everything downstream that needs a
//! deterministic tie-break uses this order.

mod generate;
mod io;
mod mst;

pub use generate::{cycle_graph, random_connected_graph, RandomGraphParams, WeightKind};
pub use io::{parse_graph, serialize_graph};
pub use mst::{enumerate_msts, kruskal_mst, kruskal_mst_by, SpanningTree, MST_ENUMERATION_CAP};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected weighted edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    /// Builds an edge with endpoints stored in canonical order.
    pub fn new(a: usize, b: usize, w: f64) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, w }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    /// Exact identity key, used where weighted edge sets are compared.
    pub(crate) fn key(&self) -> (usize, usize, u64) {
        (self.u, self.v, self.w.to_bits())
    }
}

/// A connected-or-not weighted graph `(V, E, W_E)` on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Validates and builds a graph. Endpoint order in the input does not matter.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list: Vec<Edge> = Vec::new();
        for (a, b, w) in edges {
            let e = Edge::new(a, b, w);
            let bad = |reason| Error::InvalidEdge { u: a, v: b, weight: w, reason };
            if a == b {
                return Err(bad("self-loop"));
            }
            if e.v >= vertex_count {
                return Err(bad("vertex out of range"));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(bad("weight must be finite and strictly positive"));
            }
            list.push(e);
        }
        list.sort_by_key(|e| e.endpoints());
        if let Some(pair) = list.windows(2).find(|p| p[0].endpoints() == p[1].endpoints()) {
            return Err(Error::InvalidEdge {
                u: pair[1].u,
                v: pair[1].v,
                weight: pair[1].w,
                reason: "duplicate edge",
            });
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &list {
            adjacency[e.u].push((e.v, e.w));
            adjacency[e.v].push((e.u, e.w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|&(x, _)| x);
        }
        Ok(WeightedGraph {
            vertex_count,
            edges: list,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbours of `v` sorted by vertex id, with edge weights.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// Weight of the edge `{a, b}`, if present.
    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&key, |e| e.endpoints())
            .ok()
            .map(|i| self.edges[i].w)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.weight(a, b).is_some()
    }

    /// Position of `{a, b}` in canonical edge order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.binary_search_by_key(&key, |e| e.endpoints()).ok()
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(x, _) in &self.adjacency[v] {
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    stack.push(x);
                }
            }
        }
        count == self.vertex_count
    }

    /// Number of edges is `n - 1` and the graph is connected.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

/// Free-function form of [`WeightedGraph::is_connected`].
pub fn validate_connected(g: &WeightedGraph) -> bool {
    g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_endpoints_and_order() {
        let g = WeightedGraph::new(3, [(2, 1, 2.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(g.edges()[0].endpoints(), (0, 1));
        assert_eq!(g.edges()[1].endpoints(), (1, 2));
        assert_eq!(g.weight(2, 1), Some(2.0));
        assert_eq!(g.weight(0, 2), None);
    }

    #[test]
    fn rejects_invariant_violations() {
        assert!(WeightedGraph::new(2, [(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::new(2, [(0, 1, 0.0)]).is_err());
        assert!(WeightedGraph::new(2, [(0, 1, -1.0)]).is_err());
        assert!(WeightedGraph::new(2, [(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(WeightedGraph::new(2, [(0, 2, 1.0)]).is_err());
        assert_eq!(WeightedGraph::new(0, []), Err(Error::EmptyGraph));
    }

    #[test]
    fn connectivity() {
        let path = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(validate_connected(&path));
        let split = WeightedGraph::new(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(!validate_connected(&split));
        let single = WeightedGraph::new(1, []).unwrap();
        assert!(validate_connected(&single));
    }
}
