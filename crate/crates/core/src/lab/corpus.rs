use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{random_connected_graph, RandomGraphParams, WeightedGraph};

/// A reproducible family of random connected graphs. Instance `i` depends
/// only on `(seed, i)`, never on evaluation order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub seed: u64,
    pub count: usize,
    pub n_range: (usize, usize),
    pub p_range: (f64, f64),
    pub w_range: (u32, u32),
}

/// One corpus member together with everything needed to rebuild it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub index: usize,
    pub graph_seed: u64,
    pub params: RandomGraphParams,
    #[serde(skip)]
    pub graph: WeightedGraph,
}

/// SplitMix64 step mixing a base seed with an index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Corpus {
    pub fn new(seed: u64, count: usize, n_range: (usize, usize), p_range: (f64, f64), w_range: (u32, u32)) -> Self {
        Corpus {
            seed,
            count,
            n_range,
            p_range,
            w_range,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: String| Err(Error::InvalidParameter { name, reason });
        if self.n_range.0 < 2 || self.n_range.0 > self.n_range.1 {
            return bad("n_range", format!("need 2 <= lo <= hi, got {:?}", self.n_range));
        }
        if !(0.0..=1.0).contains(&self.p_range.0) || !(0.0..=1.0).contains(&self.p_range.1) || self.p_range.0 > self.p_range.1
        {
            return bad("p_range", format!("need 0 <= lo <= hi <= 1, got {:?}", self.p_range));
        }
        if self.w_range.0 < 1 || self.w_range.0 > self.w_range.1 {
            return bad("w_range", format!("need 1 <= lo <= hi, got {:?}", self.w_range));
        }
        Ok(())
    }

    pub fn instance(&self, index: usize) -> Result<Instance> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(self.seed, index as u64));
        let n = rng.random_range(self.n_range.0..=self.n_range.1);
        let p = if self.p_range.0 == self.p_range.1 {
            self.p_range.0
        } else {
            rng.random_range(self.p_range.0..=self.p_range.1)
        };
        let graph_seed = rng.random();
        let params = RandomGraphParams::integer(n, p, self.w_range.0, self.w_range.1);
        let graph = random_connected_graph(&params, graph_seed)?;
        Ok(Instance {
            index,
            graph_seed,
            params,
            graph,
        })
    }

    pub fn instances(&self) -> impl Iterator<Item = Result<Instance>> + '_ {
        (0..self.count).map(|i| self.instance(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible_and_in_range() {
        let c = Corpus::new(9, 50, (4, 9), (0.2, 0.8), (1, 10));
        for i in 0..c.count {
            let a = c.instance(i).unwrap();
            let b = c.instance(i).unwrap();
            assert_eq!(a.graph, b.graph);
            let n = a.graph.vertex_count();
            assert!((4..=9).contains(&n));
            assert!(a.graph.is_connected());
            let rebuilt = random_connected_graph(&a.params, a.graph_seed).unwrap();
            assert_eq!(rebuilt, a.graph);
        }
        assert_ne!(c.instance(0).unwrap().graph_seed, c.instance(1).unwrap().graph_seed);
    }

    #[test]
    fn validation() {
        assert!(Corpus::new(0, 1, (5, 4), (0.1, 0.2), (1, 2)).validate().is_err());
        assert!(Corpus::new(0, 1, (4, 5), (0.3, 0.2), (1, 2)).validate().is_err());
        assert!(Corpus::new(0, 1, (4, 5), (0.1, 0.2), (0, 2)).validate().is_err());
    }
}
