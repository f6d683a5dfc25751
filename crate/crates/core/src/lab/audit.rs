use serde::Serialize;

use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::metric::distance_from_paths;
use crate::paths::PathChoiceFunction;
use crate::persistence::{compute_barcode, SimplexOrdering};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AuditViolation {
    /// The birth edge is not an edge of the graph.
    NotInGraph { edge: (usize, usize) },
    /// The edge weight differs from the distance between its endpoints.
    WeightMismatch { edge: (usize, usize), weight: f64, distance: f64 },
    /// Some vertex is strictly closer to both endpoints than they are to
    /// each other.
    DominatingMidpoint { edge: (usize, usize), midpoint: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub birth_edges: Vec<(usize, usize)>,
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every birth edge of `bcd_1` for the distance induced by `pcf`.
pub fn audit_birth_edges(g: &WeightedGraph, pcf: &PathChoiceFunction) -> Result<AuditReport> {
    let d = distance_from_paths(g, pcf)?;
    let bars = compute_barcode(&d, 1, SimplexOrdering::Lexicographic)?;
    let mut birth_edges = Vec::new();
    let mut violations = Vec::new();
    for bar in &bars.bars {
        let edge = bar.birth_edge().expect("one-dimensional bars are born on edges");
        let (v, w) = edge;
        birth_edges.push(edge);
        match g.weight(v, w) {
            None => violations.push(AuditViolation::NotInGraph { edge }),
            Some(weight) if weight != d.get(v, w) => violations.push(AuditViolation::WeightMismatch {
                edge,
                weight,
                distance: d.get(v, w),
            }),
            Some(_) => {}
        }
        let len = d.get(v, w);
        if let Some(midpoint) = (0..g.vertex_count()).find(|&x| d.get(v, x) < len && d.get(w, x) < len) {
            violations.push(AuditViolation::DominatingMidpoint { edge, midpoint });
        }
    }
    Ok(AuditReport { birth_edges, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, random_connected_graph, RandomGraphParams};
    use crate::metric::PathMode;
    use crate::paths::extract_paths;

    #[test]
    fn unit_c4() {
        let g = cycle_graph(4, &[1.0; 4]).unwrap();
        let r = audit_birth_edges(&g, &extract_paths(&g, PathMode::Weight).unwrap()).unwrap();
        assert_eq!(r.birth_edges, vec![(2, 3)]);
        assert!(r.ok());
    }

    #[test]
    fn trees_are_vacuous() {
        let g = random_connected_graph(&RandomGraphParams::integer(8, 0.0, 1, 9), 5).unwrap();
        let r = audit_birth_edges(&g, &extract_paths(&g, PathMode::Edge).unwrap()).unwrap();
        assert!(r.birth_edges.is_empty() && r.ok());
    }

    #[test]
    fn heavy_edge_routed_around_leaves_no_loop() {
        // The heavy edge (0, 3) is routed around the square, so the induced
        // distance is a path metric and bcd_1 is empty.
        let g = cycle_graph(4, &[1.0, 1.0, 1.0, 10.0]).unwrap();
        let p = PathChoiceFunction::from_routes(
            &g,
            "detour",
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3], vec![1, 2], vec![1, 2, 3], vec![2, 3]],
        )
        .unwrap();
        let r = audit_birth_edges(&g, &p).unwrap();
        assert!(r.ok());
        assert!(r.birth_edges.is_empty());
    }
}
