//! Extraction of a consistent path system realizing `d_weight` or `d_edge`.

use std::cmp::Ordering;

use super::{pair_count, pair_index, pairs, Path, PathChoiceFunction};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{shortest_path_tree, PathMode};

/// Optimal routes for every pair, made consistent.
///
/// Routes for `{v, w}` (`v < w`) come from the optimal-path tree rooted at
/// `v`, with ties broken towards the smallest predecessor id. Trees rooted
/// at different vertices can disagree on tied sub-paths; those conflicts are
/// removed by [`repair_consistency`].
pub fn extract_paths(g: &WeightedGraph, mode: PathMode) -> Result<PathChoiceFunction> {
    g.require_connected()?;
    let n = g.vertex_count();
    let mut routes = Vec::with_capacity(pair_count(n));
    for v in 0..n {
        let tree = shortest_path_tree(g, v, mode);
        for w in (v + 1)..n {
            routes.push(Path::new(tree.route_to(w)));
        }
    }
    let pcf = PathChoiceFunction::from_canonical(n, mode.to_string(), routes);
    repair_consistency(g, pcf, mode)
}

/// Equal-cost comparison under `mode`'s key. Weight sums are compared with
/// a tolerance of a few ulps since the two routes are summed in different
/// orders.
fn same_cost(g: &WeightedGraph, a: &[usize], b: &[usize], mode: PathMode) -> bool {
    let cost = |p: &[usize]| -> f64 { p.windows(2).map(|e| g.weight(e[0], e[1]).unwrap()).sum() };
    let (ca, cb) = (cost(a), cost(b));
    let close = (ca - cb).abs() <= 1e-12 * ca.abs().max(cb.abs());
    match mode {
        PathMode::Weight => close,
        PathMode::Edge => a.len() == b.len() && close,
    }
}

/// Canonical edge indices of a route, largest first. Comparing these
/// lexicographically compares `sum 2^index` over the route's edges, which
/// is additive under splicing one segment for another.
fn edge_rank(g: &WeightedGraph, p: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = p.windows(2).map(|e| g.edge_index(e[0], e[1]).unwrap()).collect();
    idx.sort_unstable_by(|a, b| b.cmp(a));
    idx
}

/// Makes a system of optimal routes consistent without changing any
/// distance (a constructive form of the (*)-replacement).
///
/// Whenever a route `P` passes through `a` and `b` but the stored route for
/// `{a, b}` differs from `P`'s segment, both candidates have the same cost
/// under `mode`. The one with the smaller edge rank wins: either the stored
/// route is overwritten with the segment, or the segment of `P` is replaced
/// by the stored route. Each rewrite strictly lowers the edge rank of one
/// route, so the loop reaches a fixpoint. Inputs whose conflicting routes
/// differ in cost, or whose splice would repeat a vertex, are rejected.
pub fn repair_consistency(
    g: &WeightedGraph,
    pcf: PathChoiceFunction,
    mode: PathMode,
) -> Result<PathChoiceFunction> {
    pcf.check_graph(g)?;
    let n = pcf.vertex_count();
    let id = pcf.id().to_string();
    let mut routes: Vec<Vec<usize>> = pcf.routes().iter().map(|p| p.vertices().to_vec()).collect();
    let pair_list: Vec<(usize, usize)> = pairs(n).collect();
    let limit = (pair_list.len() * pair_list.len()).max(16);

    for _sweep in 0..limit {
        let mut changed = false;
        for (pi, _) in pair_list.iter().enumerate() {
            if let Some(rewrite) = find_conflict(g, &routes, pi, n, mode)? {
                match rewrite {
                    Rewrite::Stored { index, route } => routes[index] = route,
                    Rewrite::Enclosing { route } => routes[pi] = route,
                }
                changed = true;
            }
        }
        if !changed {
            let out = PathChoiceFunction::from_canonical(n, id, routes.into_iter().map(Path::new).collect());
            debug_assert!(out.check_consistency().ok);
            return Ok(out);
        }
    }
    Err(Error::RepairFailed(format!("no fixpoint after {limit} sweeps")))
}

enum Rewrite {
    Stored { index: usize, route: Vec<usize> },
    Enclosing { route: Vec<usize> },
}

fn find_conflict(
    g: &WeightedGraph,
    routes: &[Vec<usize>],
    pi: usize,
    n: usize,
    mode: PathMode,
) -> Result<Option<Rewrite>> {
    let p = &routes[pi];
    let last = p.len() - 1;
    for i in 0..last {
        for j in (i + 1)..=last {
            if i == 0 && j == last {
                continue;
            }
            let (a, b) = (p[i], p[j]);
            let segment: Vec<usize> = if a < b {
                p[i..=j].to_vec()
            } else {
                p[i..=j].iter().rev().copied().collect()
            };
            let si = pair_index(n, a, b);
            let stored = &routes[si];
            if *stored == segment {
                continue;
            }
            if !same_cost(g, stored, &segment, mode) {
                return Err(Error::RepairFailed(format!(
                    "routes for ({}, {}) differ in cost; not an optimal path system",
                    a.min(b),
                    a.max(b)
                )));
            }
            return Ok(Some(match edge_rank(g, &segment).cmp(&edge_rank(g, stored)) {
                Ordering::Less => Rewrite::Stored {
                    index: si,
                    route: segment,
                },
                Ordering::Greater => {
                    // Splice the stored route into p, oriented a -> b.
                    let inner: Vec<usize> = if a < b {
                        stored.clone()
                    } else {
                        stored.iter().rev().copied().collect()
                    };
                    let mut route = p[..i].to_vec();
                    route.extend_from_slice(&inner);
                    route.extend_from_slice(&p[j + 1..]);
                    let mut seen = vec![false; n];
                    if route.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
                        return Err(Error::RepairFailed(format!(
                            "splicing the route for ({}, {}) repeats a vertex",
                            a.min(b),
                            a.max(b)
                        )));
                    }
                    Rewrite::Enclosing { route }
                }
                Ordering::Equal => unreachable!("distinct simple paths with equal endpoints have distinct edge sets"),
            }));
        }
    }
    Ok(None)
}
