//! Minimum spanning trees: Kruskal with explicit tie-breaking, and full
//! enumeration of `MST(G)` for small graphs.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Edge, WeightedGraph};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`enumerate_msts`].
pub const MST_ENUMERATION_CAP: usize = 10;

/// Largest number of trees [`enumerate_msts`] will materialize.
const MST_COUNT_CAP: u128 = 2_000_000;

/// A spanning tree with its edges in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanningTree {
    vertex_count: usize,
    edges: Vec<Edge>,
    total_weight: f64,
}

impl SpanningTree {
    /// Validates that `edges` form a spanning tree on `vertex_count` vertices.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge::new(e.u, e.v, e.w)).collect();
        edges.sort_by_key(|e| e.endpoints());
        let not_spanning = Error::NotSpanning {
            edges: edges.len(),
            vertices: vertex_count,
        };
        if edges.len() + 1 != vertex_count {
            return Err(not_spanning);
        }
        let mut sets = DisjointSets::new(vertex_count);
        for e in &edges {
            if e.v >= vertex_count || !sets.union(e.u, e.v) {
                return Err(not_spanning);
            }
        }
        let total_weight = edges.iter().map(|e| e.w).sum();
        Ok(SpanningTree {
            vertex_count,
            edges,
            total_weight,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by_key(&key, |e| e.endpoints()).is_ok()
    }

    /// Exact identity of the weighted edge set.
    pub fn key(&self) -> Vec<(usize, usize, u64)> {
        self.edges.iter().map(Edge::key).collect()
    }

    /// Identity of the unweighted edge set.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(Edge::endpoints).collect()
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal's algorithm; among equal weights the earlier edge in canonical
/// order wins.
pub fn kruskal_mst(g: &WeightedGraph) -> Result<SpanningTree> {
    kruskal_mst_by(g, |_, _| Ordering::Equal)
}

/// Kruskal's algorithm with a caller-supplied tie-break among equal weights.
/// Edges the tie-break leaves equal fall back to canonical order.
pub fn kruskal_mst_by<F>(g: &WeightedGraph, tie_break: F) -> Result<SpanningTree>
where
    F: Fn(&Edge, &Edge) -> Ordering,
{
    g.require_connected()?;
    let mut order: Vec<&Edge> = g.edges().iter().collect();
    order.sort_by(|a, b| a.w.total_cmp(&b.w).then_with(|| tie_break(a, b)));
    let mut sets = DisjointSets::new(g.vertex_count());
    let chosen: Vec<Edge> = order
        .into_iter()
        .filter(|e| sets.union(e.u, e.v))
        .copied()
        .collect();
    SpanningTree::from_edges(g.vertex_count(), chosen)
}

/// Every minimum spanning tree of `g`, sorted by canonical edge list.
///
/// Edges are processed in classes of equal weight. The components formed by
/// all strictly lighter edges are the same for every MST, so each class
/// contributes an independent choice: a maximal forest of that class in the
/// contracted graph. `MST(G)` is the product of those choices.
pub fn enumerate_msts(g: &WeightedGraph) -> Result<Vec<SpanningTree>> {
    let n = g.vertex_count();
    if n > MST_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "MST enumeration vertex",
            actual: n as u128,
            cap: MST_ENUMERATION_CAP as u128,
        });
    }
    g.require_connected()?;

    let mut sorted: Vec<Edge> = g.edges().to_vec();
    sorted.sort_by(|a, b| a.w.total_cmp(&b.w));

    let mut base = DisjointSets::new(n);
    let mut class_choices: Vec<Vec<Vec<Edge>>> = Vec::new();
    let mut total: u128 = 1;
    let mut start = 0;
    while start < sorted.len() {
        let end = start + sorted[start..].iter().take_while(|e| e.w == sorted[start].w).count();
        let class = &sorted[start..end];
        start = end;

        let labels: Vec<usize> = (0..n).map(|v| base.find(v)).collect();
        let candidates: Vec<(Edge, usize, usize)> = class
            .iter()
            .filter(|e| labels[e.u] != labels[e.v])
            .map(|e| (*e, labels[e.u], labels[e.v]))
            .collect();
        let mut rank = 0;
        for e in class {
            if base.union(e.u, e.v) {
                rank += 1;
            }
        }
        if rank == 0 {
            continue;
        }
        let mut choices = Vec::new();
        forests_of_size(&candidates, 0, rank, &mut labels.clone(), &mut Vec::new(), &mut choices);
        total = total.saturating_mul(choices.len() as u128);
        if total > MST_COUNT_CAP {
            return Err(Error::CapExceeded {
                what: "MST count",
                actual: total,
                cap: MST_COUNT_CAP,
            });
        }
        class_choices.push(choices);
    }

    let mut trees: Vec<Vec<Edge>> = vec![Vec::new()];
    for choices in &class_choices {
        let mut next = Vec::with_capacity(trees.len() * choices.len());
        for partial in &trees {
            for pick in choices {
                let mut t = partial.clone();
                t.extend_from_slice(pick);
                next.push(t);
            }
        }
        trees = next;
    }
    let mut out = trees
        .into_iter()
        .map(|edges| SpanningTree::from_edges(n, edges))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(SpanningTree::edge_pairs);
    Ok(out)
}

/// All subsets of `candidates[idx..]` of exactly `needed` edges that are
/// acyclic over the component labels.
fn forests_of_size(
    candidates: &[(Edge, usize, usize)],
    idx: usize,
    needed: usize,
    labels: &mut Vec<usize>,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
) {
    if needed == 0 {
        out.push(chosen.clone());
        return;
    }
    if candidates.len() - idx < needed {
        return;
    }
    let (edge, a, b) = candidates[idx];
    let (la, lb) = (labels[a], labels[b]);
    if la != lb {
        let saved = labels.clone();
        for l in labels.iter_mut() {
            if *l == lb {
                *l = la;
            }
        }
        chosen.push(edge);
        forests_of_size(candidates, idx + 1, needed - 1, labels, chosen, out);
        chosen.pop();
        *labels = saved;
    }
    forests_of_size(candidates, idx + 1, needed, labels, chosen, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, random_connected_graph, RandomGraphParams};

    fn triangle(a: f64, b: f64, c: f64) -> WeightedGraph {
        WeightedGraph::new(3, [(0, 1, a), (1, 2, b), (0, 2, c)]).unwrap()
    }

    /// Brute force over all (n-1)-subsets of edges.
    fn brute_force_msts(g: &WeightedGraph) -> Vec<Vec<(usize, usize)>> {
        let m = g.edge_count();
        let n = g.vertex_count();
        let mut best = f64::INFINITY;
        let mut found: Vec<Vec<(usize, usize)>> = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let picked: Vec<Edge> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
            if let Ok(t) = SpanningTree::from_edges(n, picked) {
                if t.total_weight() < best {
                    best = t.total_weight();
                    found.clear();
                }
                if t.total_weight() == best {
                    found.push(t.edge_pairs());
                }
            }
        }
        found.sort();
        found
    }

    #[test]
    fn kruskal_examples() {
        assert_eq!(kruskal_mst(&triangle(1.0, 1.0, 3.0)).unwrap().total_weight(), 2.0);
        let c4 = cycle_graph(4, &[1.0; 4]).unwrap();
        let t = kruskal_mst(&c4).unwrap();
        assert_eq!(t.edge_pairs(), vec![(0, 1), (0, 3), (1, 2)]);
        let path = WeightedGraph::new(4, [(0, 1, 3.0), (1, 2, 1.0), (2, 3, 2.0)]).unwrap();
        assert_eq!(kruskal_mst(&path).unwrap().edges(), path.edges());
    }

    #[test]
    fn kruskal_tie_break_prefers_earlier() {
        let c4 = cycle_graph(4, &[1.0; 4]).unwrap();
        // Prefer the edge (0, 1) last.
        let t = kruskal_mst_by(&c4, |a, b| {
            (a.endpoints() == (0, 1)).cmp(&(b.endpoints() == (0, 1)))
        })
        .unwrap();
        assert!(!t.contains(0, 1));
    }

    #[test]
    fn kruskal_rejects_disconnected() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(kruskal_mst(&g), Err(Error::Disconnected));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_msts(&cycle_graph(4, &[1.0; 4]).unwrap()).unwrap().len(), 4);
        let one = enumerate_msts(&triangle(1.0, 2.0, 3.0)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].edge_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(enumerate_msts(&triangle(1.0, 1.0, 1.0)).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_cap() {
        let g = cycle_graph(11, &[1.0; 11]).unwrap();
        assert!(matches!(enumerate_msts(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for seed in 0..60 {
            let g = random_connected_graph(&RandomGraphParams::integer(6, 0.5, 1, 3), seed).unwrap();
            let ours: Vec<_> = enumerate_msts(&g).unwrap().iter().map(|t| t.edge_pairs()).collect();
            assert_eq!(ours, brute_force_msts(&g), "seed {seed}");
            let k = kruskal_mst(&g).unwrap();
            assert!(ours.contains(&k.edge_pairs()));
        }
    }

    #[test]
    fn spanning_tree_validation() {
        let cyc = [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0), Edge::new(0, 2, 1.0)];
        assert!(SpanningTree::from_edges(4, cyc).is_err());
        assert!(SpanningTree::from_edges(3, [Edge::new(0, 1, 1.0)]).is_err());
    }
}
