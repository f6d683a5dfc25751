//! Exhaustive enumeration of consistent path choice functions.

use serde::{Deserialize, Serialize};

use super::{pair_count, pair_index, pairs, Path, PathChoiceFunction};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Largest vertex count accepted by the enumerators.
pub const PCF_ENUMERATION_CAP: usize = 7;

const PCF_COUNT_CAP: usize = 1_000_000;

/// Restricts enumeration to dominated path systems. Dominance is a
/// per-pair condition, so it prunes the search exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominanceFilter {
    All,
    WeightDominated,
    CostDominated,
}

/// Every consistent path choice function on `g`, in lexicographic order of
/// their route lists.
pub fn enumerate_pcfs(g: &WeightedGraph) -> Result<Vec<PathChoiceFunction>> {
    enumerate_pcfs_filtered(g, DominanceFilter::All)
}

pub fn enumerate_pcfs_filtered(g: &WeightedGraph, filter: DominanceFilter) -> Result<Vec<PathChoiceFunction>> {
    let n = g.vertex_count();
    if n > PCF_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "PCF enumeration vertex",
            actual: n as u128,
            cap: PCF_ENUMERATION_CAP as u128,
        });
    }
    g.require_connected()?;

    let allowed = |a: usize, b: usize, route: &[usize]| -> bool {
        let Some(w) = g.weight(a, b) else { return true };
        if route.len() == 2 {
            return true;
        }
        let weights = route.windows(2).map(|e| g.weight(e[0], e[1]).unwrap());
        match filter {
            DominanceFilter::All => true,
            DominanceFilter::WeightDominated => weights.into_iter().all(|x| x < w),
            DominanceFilter::CostDominated => w >= weights.sum::<f64>(),
        }
    };

    let candidates: Vec<Vec<Vec<usize>>> = pairs(n)
        .map(|(a, b)| {
            simple_paths(g, a, b)
                .into_iter()
                .filter(|r| allowed(a, b, r))
                .collect()
        })
        .collect();

    let mut search = Search {
        n,
        candidates: &candidates,
        allowed: &allowed,
        assigned: vec![None; pair_count(n)],
        out: Vec::new(),
    };
    search.run(0)?;
    let mut out = search.out;
    out.sort();
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, routes)| PathChoiceFunction::from_canonical(n, format!("pcf-{i}"), routes.into_iter().map(Path::new).collect()))
        .collect())
}

struct Search<'a, F> {
    n: usize,
    candidates: &'a [Vec<Vec<usize>>],
    allowed: &'a F,
    assigned: Vec<Option<Vec<usize>>>,
    out: Vec<Vec<Vec<usize>>>,
}

impl<F: Fn(usize, usize, &[usize]) -> bool> Search<'_, F> {
    fn run(&mut self, from: usize) -> Result<()> {
        let Some(pi) = (from..self.assigned.len()).find(|&i| self.assigned[i].is_none()) else {
            if self.out.len() >= PCF_COUNT_CAP {
                return Err(Error::CapExceeded {
                    what: "PCF count",
                    actual: self.out.len() as u128 + 1,
                    cap: PCF_COUNT_CAP as u128,
                });
            }
            self.out.push(self.assigned.iter().map(|r| r.clone().unwrap()).collect());
            return Ok(());
        };
        for cand in &self.candidates[pi] {
            let mut undo = Vec::new();
            if self.force(cand, &mut undo) {
                self.run(pi + 1)?;
            }
            for idx in undo {
                self.assigned[idx] = None;
            }
        }
        Ok(())
    }

    /// Assigns `route` and all of its sub-paths. Returns false on a clash
    /// with an existing assignment or a forced sub-path the filter rejects.
    /// Newly assigned slots are recorded in `undo` either way.
    fn force(&mut self, route: &[usize], undo: &mut Vec<usize>) -> bool {
        for i in 0..route.len() {
            for j in (i + 1)..route.len() {
                let (a, b) = (route[i], route[j]);
                let seg: Vec<usize> = if a < b {
                    route[i..=j].to_vec()
                } else {
                    route[i..=j].iter().rev().copied().collect()
                };
                let idx = pair_index(self.n, a, b);
                match &self.assigned[idx] {
                    Some(existing) if *existing != seg => return false,
                    Some(_) => {}
                    None => {
                        if !(self.allowed)(a.min(b), a.max(b), &seg) {
                            return false;
                        }
                        self.assigned[idx] = Some(seg);
                        undo.push(idx);
                    }
                }
            }
        }
        true
    }
}

/// Simple paths from `a` to `b` in lexicographic order.
pub(crate) fn simple_paths(g: &WeightedGraph, a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(g: &WeightedGraph, b: usize, stack: &mut Vec<usize>, seen: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let cur = *stack.last().unwrap();
        if cur == b {
            out.push(stack.clone());
            return;
        }
        for &(x, _) in g.neighbors(cur) {
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
                go(g, b, stack, seen, out);
                stack.pop();
                seen[x] = false;
            }
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[a] = true;
    let mut out = Vec::new();
    go(g, b, &mut vec![a], &mut seen, &mut out);
    out
}
