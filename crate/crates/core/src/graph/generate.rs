use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Cycle `0 - 1 - ... - (n-1) - 0`; edge `(i, i+1 mod n)` gets `weights[i]`.
pub fn cycle_graph(n: usize, weights: &[f64]) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("cycle needs at least 3 vertices, got {n}"),
        });
    }
    if weights.len() != n {
        return Err(Error::InvalidParameter {
            name: "weights",
            reason: format!("expected {n} weights, got {}", weights.len()),
        });
    }
    WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, weights[i])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// Uniform real in `[lo, hi]`.
    Continuous,
    /// Uniform integer in `[ceil(lo), floor(hi)]`.
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomGraphParams {
    pub n: usize,
    pub edge_prob: f64,
    pub weight_lo: f64,
    pub weight_hi: f64,
    pub weights: WeightKind,
}

impl RandomGraphParams {
    pub fn integer(n: usize, edge_prob: f64, weight_lo: u32, weight_hi: u32) -> Self {
        RandomGraphParams {
            n,
            edge_prob,
            weight_lo: weight_lo as f64,
            weight_hi: weight_hi as f64,
            weights: WeightKind::Integer,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("need at least 2 vertices, got {}", self.n),
            });
        }
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(Error::InvalidParameter {
                name: "edge_prob",
                reason: format!("{} is not a probability", self.edge_prob),
            });
        }
        let (lo, hi) = (self.weight_lo, self.weight_hi);
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "weight range",
                reason: format!("need 0 < lo <= hi, got [{lo}, {hi}]"),
            });
        }
        if self.weights == WeightKind::Integer && lo.ceil() > hi.floor() {
            return Err(Error::InvalidParameter {
                name: "weight range",
                reason: format!("no integer in [{lo}, {hi}]"),
            });
        }
        Ok(())
    }
}

/// Seeded connected random graph.
///
/// A random spanning tree is laid down first (each vertex of a shuffled order
/// attaches to a uniformly chosen earlier one), then every remaining pair is
/// added independently with probability `edge_prob`. The generator is
/// ChaCha8, so the same seed gives the same graph on every platform.
pub fn random_connected_graph(params: &RandomGraphParams, seed: u64) -> Result<WeightedGraph> {
    params.validate()?;
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_weight = |rng: &mut ChaCha8Rng| match params.weights {
        WeightKind::Continuous => rng.random_range(params.weight_lo..=params.weight_hi),
        WeightKind::Integer => {
            let lo = params.weight_lo.ceil() as u64;
            let hi = params.weight_hi.floor() as u64;
            rng.random_range(lo..=hi) as f64
        }
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = vec![false; n * n];
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        let child = order[i];
        let (a, b) = (parent.min(child), parent.max(child));
        present[a * n + b] = true;
        edges.push((a, b, draw_weight(&mut rng)));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !present[a * n + b] && rng.random_bool(params.edge_prob) {
                edges.push((a, b, draw_weight(&mut rng)));
            }
        }
    }
    WeightedGraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_shapes() {
        let c4 = cycle_graph(4, &[1.0; 4]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.has_edge(3, 0));
        let c5 = cycle_graph(5, &[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(c5.weight(4, 0), Some(5.0));
        assert_eq!(c5.weight(2, 3), Some(3.0));
        assert!(cycle_graph(2, &[1.0, 1.0]).is_err());
        assert!(cycle_graph(4, &[1.0; 3]).is_err());
    }

    #[test]
    fn random_graph_is_deterministic() {
        let p = RandomGraphParams {
            n: 6,
            edge_prob: 0.5,
            weight_lo: 1.0,
            weight_hi: 10.0,
            weights: WeightKind::Continuous,
        };
        let a = random_connected_graph(&p, 42).unwrap();
        let b = random_connected_graph(&p, 42).unwrap();
        assert_eq!(a, b);
        let bits = |g: &WeightedGraph| g.edges().iter().map(|e| e.w.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        assert_ne!(a, random_connected_graph(&p, 43).unwrap());
    }

    #[test]
    fn edge_probability_extremes() {
        let tree = random_connected_graph(&RandomGraphParams::integer(6, 0.0, 1, 10), 1).unwrap();
        assert_eq!(tree.edge_count(), 5);
        assert!(tree.is_tree());
        let full = random_connected_graph(&RandomGraphParams::integer(6, 1.0, 1, 10), 1).unwrap();
        assert_eq!(full.edge_count(), 15);
    }

    #[test]
    fn integer_weights_stay_in_range() {
        for seed in 0..50 {
            let g = random_connected_graph(&RandomGraphParams::integer(8, 0.5, 1, 10), seed).unwrap();
            assert!(g.is_connected());
            for e in g.edges() {
                assert_eq!(e.w.fract(), 0.0);
                assert!((1.0..=10.0).contains(&e.w));
            }
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(random_connected_graph(&RandomGraphParams::integer(1, 0.5, 1, 10), 0).is_err());
        assert!(random_connected_graph(&RandomGraphParams::integer(4, 1.5, 1, 10), 0).is_err());
        assert!(random_connected_graph(&RandomGraphParams::integer(4, 0.5, 0, 10), 0).is_err());
        assert!(random_connected_graph(&RandomGraphParams::integer(4, 0.5, 5, 3), 0).is_err());
    }
}
