//! Persistent Betti numbers from ranks of restricted boundary maps.
//!
//! Shares nothing with the reduction beyond the simplex list, so it serves as
//! an independent check of the barcode extraction.

use super::barcode::cmp_interval;
use super::filtration::{FilteredComplex, Simplex};
use crate::error::{Error, Result};

/// Largest vertex count the dense oracle accepts.
pub const ORACLE_VERTEX_CAP: usize = 7;

/// Rank over Z/2 of a set of column bitmasks.
fn rank(mut cols: Vec<u64>) -> usize {
    let mut r = 0;
    for bit in (0..64).rev() {
        let Some(p) = cols.iter().position(|&c| c >> bit & 1 == 1) else { continue };
        let pivot = cols.swap_remove(p);
        for c in cols.iter_mut() {
            if *c >> bit & 1 == 1 {
                *c ^= pivot;
            }
        }
        r += 1;
    }
    r
}

/// Unannotated bars of dimension `k`, sorted with infinite deaths last.
pub fn naive_homology_oracle(complex: &FilteredComplex, k: usize) -> Result<Vec<(f64, Option<f64>)>> {
    if complex.vertex_count() > ORACLE_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "oracle vertex",
            actual: complex.vertex_count() as u128,
            cap: ORACLE_VERTEX_CAP as u128,
        });
    }
    if k >= complex.max_dim() {
        return Err(Error::DimensionOutOfRange {
            k,
            max_dim: complex.max_dim(),
        });
    }
    let grid = complex.grid();
    let level = |v: f64| grid.iter().position(|&g| g == v).unwrap();

    let of_dim = |dim: usize| -> Vec<(Simplex, usize)> {
        complex
            .simplices()
            .iter()
            .filter(|s| s.simplex.dim() == dim)
            .map(|s| (s.simplex, level(s.value)))
            .collect()
    };
    let k_simplices = of_dim(k);
    let up = of_dim(k + 1);
    let row_of = |s: Simplex| k_simplices.iter().position(|&(t, _)| t == s).unwrap();
    // Boundary of each (k+1)-simplex as a bitmask over k-simplex rows.
    let boundary: Vec<(u64, usize)> = up
        .iter()
        .map(|&(s, lv)| (s.facets().fold(0u64, |m, f| m | 1 << row_of(f)), lv))
        .collect();
    // For k = 0 the boundary map out of C_0 is zero.
    let down_rank = |i: usize| -> usize {
        if k == 0 {
            return 0;
        }
        let rows = of_dim(k - 1);
        let row = |s: Simplex| rows.iter().position(|&(t, _)| t == s).unwrap();
        rank(
            k_simplices
                .iter()
                .filter(|&&(_, lv)| lv <= i)
                .map(|&(s, _)| s.facets().fold(0u64, |m, f| m | 1 << row(f)))
                .collect(),
        )
    };

    let m = grid.len();
    let mut cycles = vec![0usize; m];
    for (i, c) in cycles.iter_mut().enumerate() {
        let nk = k_simplices.iter().filter(|&&(_, lv)| lv <= i).count();
        *c = nk - down_rank(i);
    }
    // beta[i][j] for i <= j: dim Z_k(K_i) - dim(B_k(K_j) ∩ C_k(K_i)).
    let mut beta = vec![vec![0usize; m]; m];
    for i in 0..m {
        let outside: u64 = k_simplices
            .iter()
            .enumerate()
            .filter(|(_, &(_, lv))| lv > i)
            .fold(0u64, |acc, (r, _)| acc | 1 << r);
        for (j, slot) in beta[i].iter_mut().enumerate().skip(i) {
            let cols: Vec<u64> = boundary.iter().filter(|&&(_, lv)| lv <= j).map(|&(c, _)| c).collect();
            let full = rank(cols.clone());
            let projected = rank(cols.into_iter().map(|c| c & outside).collect());
            *slot = cycles[i] - (full - projected);
        }
    }
    let b = |i: isize, j: usize| -> isize {
        if i < 0 {
            0
        } else {
            beta[i as usize][j] as isize
        }
    };

    let mut bars = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let mu = b(i as isize, j - 1) - b(i as isize, j) - b(i as isize - 1, j - 1) + b(i as isize - 1, j);
            debug_assert!(mu >= 0);
            for _ in 0..mu.max(0) {
                bars.push((grid[i], Some(grid[j])));
            }
        }
        let mu = b(i as isize, m - 1) - b(i as isize - 1, m - 1);
        for _ in 0..mu.max(0) {
            bars.push((grid[i], None));
        }
    }
    bars.sort_by(|a, b| cmp_interval(*a, *b));
    Ok(bars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;
    use crate::metric::d_weight;
    use crate::persistence::build_filtration;

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![0b011, 0b110, 0b101]), 2);
        assert_eq!(rank(vec![0b001, 0b010, 0b100]), 3);
    }

    #[test]
    fn unit_c4() {
        let d = d_weight(&cycle_graph(4, &[1.0; 4]).unwrap()).unwrap();
        let c = build_filtration(&d, 2).unwrap();
        assert_eq!(naive_homology_oracle(&c, 1).unwrap(), vec![(1.0, Some(2.0))]);
        let zero = naive_homology_oracle(&c, 0).unwrap();
        assert_eq!(zero, vec![(0.0, Some(1.0)), (0.0, Some(1.0)), (0.0, Some(1.0)), (0.0, None)]);
    }

    #[test]
    fn cap() {
        let d = d_weight(&cycle_graph(8, &[1.0; 8]).unwrap()).unwrap();
        let c = build_filtration(&d, 1).unwrap();
        assert!(naive_homology_oracle(&c, 0).is_err());
    }
}
