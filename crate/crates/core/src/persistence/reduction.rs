//! The standard left-to-right column reduction `R = D V` over Z/2.

use std::collections::HashMap;

use super::filtration::{FilteredComplex, Simplex};
use crate::error::Result;
use crate::graph::{Edge, SpanningTree};

/// Reduced boundary matrix. Columns are sorted row-index sets.
#[derive(Debug, Clone)]
pub struct ReducedMatrix {
    columns: Vec<Vec<usize>>,
    low: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
    essential: Vec<usize>,
    v: Option<Vec<Vec<usize>>>,
}

impl ReducedMatrix {
    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn low(&self, j: usize) -> Option<usize> {
        self.low[j]
    }

    /// `(i, j)` with `low(j) = i`, ordered by `j`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Zero columns whose index is not the low of any column.
    pub fn essential(&self) -> &[usize] {
        &self.essential
    }

    /// Columns of `V`, when tracked.
    pub fn v_columns(&self) -> Option<&[Vec<usize>]> {
        self.v.as_deref()
    }
}

/// Boundary matrix columns in filtration order.
pub fn boundary_columns(complex: &FilteredComplex) -> Vec<Vec<usize>> {
    let index: HashMap<Simplex, usize> = complex
        .simplices()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.simplex, i))
        .collect();
    complex
        .simplices()
        .iter()
        .map(|s| {
            let mut col: Vec<usize> = s.simplex.facets().map(|f| index[&f]).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Sorted symmetric difference, i.e. addition over Z/2.
fn add_into(target: &mut Vec<usize>, source: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&source[j..]);
    *target = out;
}

pub fn reduce(complex: &FilteredComplex) -> ReducedMatrix {
    reduce_impl(complex, false)
}

/// Like [`reduce`], also recording `V`.
pub fn reduce_tracking_v(complex: &FilteredComplex) -> ReducedMatrix {
    reduce_impl(complex, true)
}

fn reduce_impl(complex: &FilteredComplex, track_v: bool) -> ReducedMatrix {
    let mut columns = boundary_columns(complex);
    let m = columns.len();
    let mut v: Option<Vec<Vec<usize>>> = track_v.then(|| (0..m).map(|j| vec![j]).collect());
    // row -> column whose low it is
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m];
    let mut low = vec![None; m];
    let mut pairs = Vec::new();

    for j in 0..m {
        let mut col = std::mem::take(&mut columns[j]);
        while let Some(&l) = col.last() {
            let Some(prev) = pivot_of_row[l] else { break };
            add_into(&mut col, &columns[prev]);
            if let Some(v) = v.as_mut() {
                let src = v[prev].clone();
                add_into(&mut v[j], &src);
            }
        }
        if let Some(&l) = col.last() {
            pivot_of_row[l] = Some(j);
            low[j] = Some(l);
            pairs.push((l, j));
        }
        columns[j] = col;
    }
    let essential = (0..m)
        .filter(|&i| columns[i].is_empty() && pivot_of_row[i].is_none())
        .collect();
    ReducedMatrix {
        columns,
        low,
        pairs,
        essential,
        v,
    }
}

/// Edges whose column is paired with a vertex row: the spanning tree chosen
/// by the reduction.
pub fn mst_from_reduction(rm: &ReducedMatrix, complex: &FilteredComplex) -> Result<SpanningTree> {
    let s = complex.simplices();
    let edges = rm
        .pairs()
        .iter()
        .filter(|&&(i, j)| s[i].simplex.dim() == 0 && s[j].simplex.dim() == 1)
        .map(|&(_, j)| {
            let v = s[j].simplex.vertices();
            Edge::new(v[0], v[1], s[j].value)
        });
    SpanningTree::from_edges(complex.vertex_count(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, enumerate_msts, random_connected_graph, RandomGraphParams};
    use crate::metric::{d_edge, d_weight, DistanceMatrix, PathMode, Provenance};
    use crate::paths::{extract_paths, graph_completion};
    use crate::persistence::{build_filtration, build_filtration_with, SimplexOrdering, DEFAULT_SIMPLEX_CAP};

    /// Dense Z/2 product D * V, column j.
    fn product_column(d: &[Vec<usize>], v: &[usize]) -> Vec<usize> {
        let mut acc = Vec::new();
        for &k in v {
            add_into(&mut acc, &d[k]);
        }
        acc
    }

    #[test]
    fn single_edge() {
        let d = DistanceMatrix::from_rows(vec![vec![0.0, 2.5], vec![2.5, 0.0]], Provenance::Weight).unwrap();
        let c = build_filtration(&d, 1).unwrap();
        let rm = reduce(&c);
        assert_eq!(rm.low(2), Some(1));
        assert_eq!(rm.pairs(), &[(1, 2)]);
        assert_eq!(rm.essential(), &[0]);
    }

    #[test]
    fn r_equals_dv_and_lows_are_unique() {
        for seed in 0..30 {
            let g = random_connected_graph(&RandomGraphParams::integer(7, 0.5, 1, 5), seed).unwrap();
            let c = build_filtration(&d_edge(&g).unwrap(), 3).unwrap();
            let d = boundary_columns(&c);
            let rm = reduce_tracking_v(&c);
            let vs = rm.v_columns().unwrap();
            let mut lows = std::collections::HashSet::new();
            for (j, v) in vs.iter().enumerate() {
                assert_eq!(product_column(&d, v), rm.column(j));
                // V is upper unitriangular: only earlier columns were added.
                assert_eq!(vs[j].last(), Some(&j));
                if let Some(l) = rm.low(j) {
                    assert!(lows.insert(l));
                }
            }
        }
    }

    #[test]
    fn tree_metric_yields_the_tree() {
        let g = crate::graph::WeightedGraph::new(4, [(0, 1, 2.0), (1, 2, 1.0), (2, 3, 3.0)]).unwrap();
        let c = build_filtration(&d_weight(&g).unwrap(), 2).unwrap();
        let t = mst_from_reduction(&reduce(&c), &c).unwrap();
        assert_eq!(t.edge_pairs(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn unit_c4_tree_is_three_unit_edges() {
        let g = cycle_graph(4, &[1.0; 4]).unwrap();
        let c = build_filtration(&d_weight(&g).unwrap(), 2).unwrap();
        let t = mst_from_reduction(&reduce(&c), &c).unwrap();
        assert_eq!(t.edges().len(), 3);
        assert!(t.edges().iter().all(|e| e.w == 1.0));
        let tf = build_filtration_with(
            &d_weight(&g).unwrap(),
            2,
            SimplexOrdering::TreeFirst(vec![(1, 2), (2, 3), (0, 3)]),
            DEFAULT_SIMPLEX_CAP,
        )
        .unwrap();
        assert_eq!(mst_from_reduction(&reduce(&tf), &tf).unwrap().edge_pairs(), vec![(0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn reduction_tree_is_an_mst_of_the_completion() {
        for seed in 0..40 {
            let g = random_connected_graph(&RandomGraphParams::integer(7, 0.4, 1, 4), seed).unwrap();
            let pcf = extract_paths(&g, PathMode::Edge).unwrap();
            let k = graph_completion(&g, &pcf).unwrap();
            let c = build_filtration(&d_edge(&g).unwrap(), 2).unwrap();
            let t = mst_from_reduction(&reduce(&c), &c).unwrap();
            let all: Vec<_> = enumerate_msts(&k).unwrap().iter().map(|t| t.key()).collect();
            assert!(all.contains(&t.key()), "seed {seed}");
        }
    }
}
