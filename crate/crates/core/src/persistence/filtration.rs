//! Vietoris-Rips filtrations of a distance matrix, truncated at `max_dim`.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SpanningTree;
use crate::metric::DistanceMatrix;

/// Default cap on the number of simplices materialized.
pub const DEFAULT_SIMPLEX_CAP: u128 = 2_000_000;

/// A simplex on at most 64 vertices, stored as a vertex bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(u64);

impl Simplex {
    pub fn from_vertices(vertices: &[usize]) -> Self {
        Simplex(vertices.iter().fold(0u64, |m, &v| m | (1 << v)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0.count_ones() as usize - 1
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.count_ones() as usize);
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    /// Codimension-one faces.
    pub fn facets(self) -> impl Iterator<Item = Simplex> {
        let mask = self.0;
        let mut rest = if self.0.count_ones() > 1 { self.0 } else { 0 };
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            Some(Simplex(mask & !bit))
        })
    }

    /// Lexicographic order on sorted vertex tuples.
    pub fn cmp_lex(self, other: Simplex) -> Ordering {
        self.vertices().cmp(&other.vertices())
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilteredSimplex {
    pub simplex: Simplex,
    pub value: f64,
}

/// Tie-break among simplices with equal filtration value. All variants sort
/// primarily by value and then by dimension, so faces precede cofaces.
#[derive(Debug, Clone, PartialEq)]
pub enum SimplexOrdering {
    /// Sorted vertex tuples.
    Lexicographic,
    /// Edges of the given spanning tree before other edges of equal value;
    /// otherwise lexicographic.
    TreeFirst(Vec<(usize, usize)>),
    /// Pseudo-random order derived from the seed.
    Shuffled(u64),
}

impl SimplexOrdering {
    fn compare(&self, a: &FilteredSimplex, b: &FilteredSimplex, tree: &HashSet<u64>) -> Ordering {
        a.value
            .total_cmp(&b.value)
            .then(a.simplex.dim().cmp(&b.simplex.dim()))
            .then_with(|| match self {
                SimplexOrdering::Lexicographic => a.simplex.cmp_lex(b.simplex),
                SimplexOrdering::TreeFirst(_) => {
                    let ta = !tree.contains(&a.simplex.mask());
                    let tb = !tree.contains(&b.simplex.mask());
                    ta.cmp(&tb).then_with(|| a.simplex.cmp_lex(b.simplex))
                }
                SimplexOrdering::Shuffled(seed) => {
                    shuffle_key(*seed, a.simplex.mask()).cmp(&shuffle_key(*seed, b.simplex.mask()))
                }
            })
    }
}

fn shuffle_key(seed: u64, mask: u64) -> (u64, u64) {
    // SplitMix64 finalizer; the mask breaks the (negligible) collisions.
    let mut z = seed ^ mask.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31), mask)
}

/// All simplices of dimension `<= max_dim` in filtration order.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    n: usize,
    max_dim: usize,
    simplices: Vec<FilteredSimplex>,
    ordering: SimplexOrdering,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Rips filtration with lexicographic tie-breaking and the default budget.
pub fn build_filtration(d: &DistanceMatrix, max_dim: usize) -> Result<FilteredComplex> {
    build_filtration_with(d, max_dim, SimplexOrdering::Lexicographic, DEFAULT_SIMPLEX_CAP)
}

pub fn build_filtration_with(
    d: &DistanceMatrix,
    max_dim: usize,
    ordering: SimplexOrdering,
    cap: u128,
) -> Result<FilteredComplex> {
    let n = d.n();
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "filtration vertex",
            actual: n as u128,
            cap: 64,
        });
    }
    if max_dim < 1 || max_dim + 1 > n {
        return Err(Error::InvalidParameter {
            name: "max_dim",
            reason: format!("need 1 <= max_dim <= n - 1 = {}, got {max_dim}", n.saturating_sub(1)),
        });
    }
    let required: u128 = (1..=max_dim + 1).map(|s| binomial(n, s)).sum();
    if required > cap {
        return Err(Error::SimplexBudget {
            required,
            cap,
            n,
            size: max_dim + 1,
            top: binomial(n, max_dim + 1),
        });
    }

    let mut simplices = Vec::with_capacity(required as usize);
    for v in 0..n {
        simplices.push(FilteredSimplex {
            simplex: Simplex(1 << v),
            value: 0.0,
        });
    }
    // Grow each simplex by vertices larger than its maximum; the value of
    // the coface is the max of the face value and the new vertex's distances.
    let mut frontier: Vec<FilteredSimplex> = simplices.clone();
    for _ in 1..=max_dim {
        let mut next = Vec::new();
        for s in &frontier {
            let top = 63 - s.simplex.mask().leading_zeros() as usize;
            let verts = s.simplex.vertices();
            for x in (top + 1)..n {
                let value = verts.iter().map(|&v| d.get(v, x)).fold(s.value, f64::max);
                next.push(FilteredSimplex {
                    simplex: Simplex(s.simplex.mask() | (1 << x)),
                    value,
                });
            }
        }
        simplices.extend_from_slice(&next);
        frontier = next;
    }
    let mut complex = FilteredComplex {
        n,
        max_dim,
        simplices,
        ordering: SimplexOrdering::Lexicographic,
    };
    complex.apply_ordering(ordering);
    Ok(complex)
}

impl FilteredComplex {
    fn apply_ordering(&mut self, ordering: SimplexOrdering) {
        let tree: HashSet<u64> = match &ordering {
            SimplexOrdering::TreeFirst(edges) => edges
                .iter()
                .map(|&(a, b)| Simplex::from_vertices(&[a, b]).mask())
                .collect(),
            _ => HashSet::new(),
        };
        self.simplices.sort_by(|a, b| ordering.compare(a, b, &tree));
        self.ordering = ordering;
    }

    /// Same simplices under a different tie-break.
    pub fn reordered(mut self, ordering: SimplexOrdering) -> Self {
        self.apply_ordering(ordering);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn ordering(&self) -> &SimplexOrdering {
        &self.ordering
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Distinct filtration values, increasing.
    pub fn grid(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self.simplices.iter().map(|s| s.value).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        vals
    }
}

/// Tie-break placing the given tree's edges first among equal-valued edges.
pub fn canonical_ordering(complex: &FilteredComplex, mst: &SpanningTree) -> Result<SimplexOrdering> {
    if mst.vertex_count() != complex.vertex_count() {
        return Err(Error::NotSpanning {
            edges: mst.edges().len(),
            vertices: complex.vertex_count(),
        });
    }
    Ok(SimplexOrdering::TreeFirst(mst.edge_pairs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;
    use crate::metric::{d_weight, Provenance};

    fn three_points() -> DistanceMatrix {
        DistanceMatrix::from_rows(
            vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]],
            Provenance::Weight,
        )
        .unwrap()
    }

    #[test]
    fn max_rule_on_three_points() {
        let c = build_filtration(&three_points(), 2).unwrap();
        let listed: Vec<(Vec<usize>, f64)> = c.simplices().iter().map(|s| (s.simplex.vertices(), s.value)).collect();
        assert_eq!(
            listed,
            vec![
                (vec![0], 0.0),
                (vec![1], 0.0),
                (vec![2], 0.0),
                (vec![0, 1], 1.0),
                (vec![1, 2], 1.0),
                (vec![0, 2], 2.0),
                (vec![0, 1, 2], 2.0),
            ]
        );
    }

    #[test]
    fn unit_c4_values_match_max_rule() {
        let d = d_weight(&cycle_graph(4, &[1.0; 4]).unwrap()).unwrap();
        let c = build_filtration(&d, 2).unwrap();
        // Oracle: recompute each simplex value from the pairwise definition.
        for s in c.simplices() {
            let v = s.simplex.vertices();
            let mut expected: f64 = 0.0;
            for i in 0..v.len() {
                for j in (i + 1)..v.len() {
                    expected = expected.max(d.get(v[i], v[j]));
                }
            }
            assert_eq!(s.value, expected);
        }
        let edges: Vec<f64> = c.simplices().iter().filter(|s| s.simplex.dim() == 1).map(|s| s.value).collect();
        assert_eq!(edges, vec![1.0, 1.0, 1.0, 1.0, 2.0, 2.0]);
        let triangles: Vec<f64> = c.simplices().iter().filter(|s| s.simplex.dim() == 2).map(|s| s.value).collect();
        assert_eq!(triangles, vec![2.0; 4]);
    }

    #[test]
    fn faces_precede_cofaces_under_every_ordering() {
        let d = d_weight(&cycle_graph(5, &[1.0, 1.0, 2.0, 1.0, 1.0]).unwrap()).unwrap();
        for ord in [
            SimplexOrdering::Lexicographic,
            SimplexOrdering::Shuffled(7),
            SimplexOrdering::TreeFirst(vec![(0, 1), (1, 2), (3, 4), (0, 4)]),
        ] {
            let c = build_filtration_with(&d, 3, ord, DEFAULT_SIMPLEX_CAP).unwrap();
            let pos: std::collections::HashMap<Simplex, usize> =
                c.simplices().iter().enumerate().map(|(i, s)| (s.simplex, i)).collect();
            for (i, s) in c.simplices().iter().enumerate() {
                for f in s.simplex.facets() {
                    assert!(pos[&f] < i);
                }
            }
        }
    }

    #[test]
    fn budget_guard_names_the_binomial() {
        let rows = (0..20)
            .map(|i| (0..20).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        let d = DistanceMatrix::from_rows(rows, Provenance::Weight).unwrap();
        let err = build_filtration_with(&d, 6, SimplexOrdering::Lexicographic, 100_000).unwrap_err();
        assert!(matches!(err, Error::SimplexBudget { n: 20, size: 7, top: 77_520, .. }));
        assert!(err.to_string().contains("C(20,7)"));
    }

    #[test]
    fn max_dim_range() {
        assert!(build_filtration(&three_points(), 0).is_err());
        assert!(build_filtration(&three_points(), 3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(20, 7), 77_520);
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(3, 5), 0);
    }
}
