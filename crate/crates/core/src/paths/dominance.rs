use serde::Serialize;

use super::PathChoiceFunction;
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::metric::distance_from_paths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DominanceReport {
    pub weight_dominated: bool,
    pub cost_dominated: bool,
}

/// For every edge `e = (v, w)` whose pair is routed around it, checks
/// whether `e` is strictly heavier than each route edge (weight-dominated)
/// and at least the route's total (cost-dominated).
pub fn classify_dominance(g: &WeightedGraph, pcf: &PathChoiceFunction) -> Result<DominanceReport> {
    pcf.check_graph(g)?;
    pcf.require_consistent()?;
    let mut report = DominanceReport {
        weight_dominated: true,
        cost_dominated: true,
    };
    for e in g.edges() {
        let route = pcf.get(e.u, e.v);
        if route.is_single_edge() {
            continue;
        }
        let heaviest = route
            .edges()
            .map(|(a, b)| g.weight(a, b).unwrap())
            .fold(0.0, f64::max);
        if e.w <= heaviest {
            report.weight_dominated = false;
        }
        if e.w < route.cost(g) {
            report.cost_dominated = false;
        }
    }
    debug_assert!(!report.cost_dominated || report.weight_dominated);
    Ok(report)
}

/// Complete graph on the same vertices weighted by the induced distance.
pub fn graph_completion(g: &WeightedGraph, pcf: &PathChoiceFunction) -> Result<WeightedGraph> {
    let d = distance_from_paths(g, pcf)?;
    let n = g.vertex_count();
    WeightedGraph::new(
        n,
        (0..n).flat_map(|v| ((v + 1)..n).map(move |w| (v, w))).map(|(v, w)| (v, w, d.get(v, w))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::{cycle_graph, random_connected_graph, RandomGraphParams};
    use crate::metric::PathMode;
    use crate::paths::extract_paths;

    #[test]
    fn single_edge_system_is_vacuously_dominated() {
        let g = WeightedGraph::new(3, [(0, 1, 2.0), (1, 2, 1.0), (0, 2, 5.0)]).unwrap();
        let pcf = PathChoiceFunction::from_routes(&g, "e", vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let r = classify_dominance(&g, &pcf).unwrap();
        assert!(r.weight_dominated && r.cost_dominated);
        assert_eq!(graph_completion(&g, &pcf).unwrap(), g);
    }

    #[test]
    fn extracted_systems_are_cost_dominated() {
        for seed in 0..100 {
            let g = random_connected_graph(&RandomGraphParams::integer(7, 0.5, 1, 10), seed).unwrap();
            for mode in [PathMode::Weight, PathMode::Edge] {
                let r = classify_dominance(&g, &extract_paths(&g, mode).unwrap()).unwrap();
                assert!(r.cost_dominated && r.weight_dominated, "seed {seed}");
            }
        }
    }

    #[test]
    fn weight_but_not_cost_dominated() {
        // Edge (0,2) weight 3 routed over edges of weight 2 each: 3 > 2 but 3 < 4.
        let g = WeightedGraph::new(3, [(0, 1, 2.0), (1, 2, 2.0), (0, 2, 3.0)]).unwrap();
        let pcf = PathChoiceFunction::from_routes(&g, "x", vec![vec![0, 1], vec![0, 1, 2], vec![1, 2]]).unwrap();
        let r = classify_dominance(&g, &pcf).unwrap();
        assert_eq!(
            r,
            DominanceReport {
                weight_dominated: true,
                cost_dominated: false
            }
        );
    }

    #[test]
    fn completions() {
        let tri = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();
        let k = graph_completion(&tri, &extract_paths(&tri, PathMode::Weight).unwrap()).unwrap();
        assert_eq!(k.weight(0, 2), Some(2.0));
        assert_eq!(k.weight(0, 1), Some(1.0));

        let c4 = cycle_graph(4, &[1.0; 4]).unwrap();
        let k = graph_completion(&c4, &extract_paths(&c4, PathMode::Weight).unwrap()).unwrap();
        assert_eq!(k.edge_count(), 6);
        assert_eq!(k.weight(0, 2), Some(2.0));
        assert_eq!(k.weight(1, 3), Some(2.0));
    }

    #[test]
    fn completion_keeps_single_edge_weights() {
        for seed in 0..50 {
            let g = random_connected_graph(&RandomGraphParams::integer(7, 0.5, 1, 10), seed).unwrap();
            let pcf = extract_paths(&g, PathMode::Edge).unwrap();
            let k = graph_completion(&g, &pcf).unwrap();
            for (v, w, route) in pcf.iter() {
                if route.is_single_edge() {
                    assert_eq!(k.weight(v, w), g.weight(v, w));
                }
            }
        }
    }

    #[test]
    fn inconsistent_input_is_rejected() {
        let c4 = cycle_graph(4, &[1.0; 4]).unwrap();
        let pcf = PathChoiceFunction::from_routes(
            &c4,
            "bad",
            vec![vec![0, 3, 2, 1], vec![0, 1, 2], vec![0, 3], vec![1, 2], vec![1, 0, 3], vec![2, 3]],
        )
        .unwrap();
        assert!(matches!(classify_dominance(&c4, &pcf), Err(Error::Inconsistent { .. })));
        assert!(matches!(graph_completion(&c4, &pcf), Err(Error::Inconsistent { .. })));
    }
}
