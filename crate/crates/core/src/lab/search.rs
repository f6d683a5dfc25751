use rayon::prelude::*;
use serde::Serialize;

use super::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::{serialize_graph, WeightedGraph};
use crate::metric::{d_edge, d_weight};
use crate::persistence::{compute_barcode, SimplexOrdering};

/// Bar counts of `bcd_k` for both extraction distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BarCounts {
    pub weight: usize,
    pub edge: usize,
}

pub fn bar_counts(g: &WeightedGraph, k: usize) -> Result<BarCounts> {
    Ok(BarCounts {
        weight: compute_barcode(&d_weight(g)?, k, SimplexOrdering::Lexicographic)?.len(),
        edge: compute_barcode(&d_edge(g)?, k, SimplexOrdering::Lexicographic)?.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub k: usize,
    pub trial: usize,
    pub graph_seed: u64,
    pub graph: String,
    pub sizes: BarCounts,
}

/// First trial (by index) where `|bcd_k(d_edge)| < |bcd_k(d_weight)|`.
/// Since `d_weight <= d_edge`, such a graph admits no injection
/// `bcd_k(d_weight) -> bcd_k(d_edge)`.
pub fn search_counterexample(k: usize, trials: &Corpus) -> Result<Option<Witness>> {
    if k < 2 {
        return Err(Error::TheoremHolds(k));
    }
    trials.validate()?;
    let found = (0..trials.count).into_par_iter().find_map_first(|t| {
        let attempt = || -> Result<Option<Witness>> {
            let inst = trials.instance(t)?;
            let sizes = bar_counts(&inst.graph, k)?;
            Ok((sizes.edge < sizes.weight).then(|| Witness {
                k,
                trial: t,
                graph_seed: inst.graph_seed,
                graph: serialize_graph(&inst.graph),
                sizes,
            }))
        };
        attempt().transpose()
    });
    found.transpose()
}

/// The default trial budget for [`search_counterexample`].
pub fn default_search_corpus(seed: u64, trials: usize) -> Corpus {
    Corpus::new(seed, trials, (6, 10), (0.4, 0.9), (1, 10))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refuses_low_dimensions() {
        let c = default_search_corpus(0, 1);
        assert_eq!(search_counterexample(1, &c).unwrap_err(), Error::TheoremHolds(1));
        assert_eq!(search_counterexample(0, &c).unwrap_err(), Error::TheoremHolds(0));
        assert!(Error::TheoremHolds(1).to_string().contains("theorem holds in dimension 1"));
    }

    #[test]
    fn k_zero_counts_agree() {
        let c = default_search_corpus(4, 20);
        for inst in c.instances() {
            let g = inst.unwrap().graph;
            let s = bar_counts(&g, 0).unwrap();
            assert_eq!(s.weight, g.vertex_count());
            assert_eq!(s.edge, s.weight);
        }
    }
}
