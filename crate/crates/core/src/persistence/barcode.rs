use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::filtration::{build_filtration_with, FilteredComplex, Simplex, SimplexOrdering, DEFAULT_SIMPLEX_CAP};
use super::reduction::{reduce, ReducedMatrix};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// A persistence interval annotated with the simplex that created it.
/// `death == None` is an essential class.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    pub birth: f64,
    pub death: Option<f64>,
    pub birth_simplex: Simplex,
}

impl Bar {
    /// Birth simplex vertices as an edge, for one-dimensional bars.
    pub fn birth_edge(&self) -> Option<(usize, usize)> {
        match self.birth_simplex.vertices()[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    pub fn interval(&self) -> (f64, Option<f64>) {
        (self.birth, self.death)
    }
}

/// Total order on (birth, death) with infinite deaths last.
pub fn cmp_interval(a: (f64, Option<f64>), b: (f64, Option<f64>)) -> Ordering {
    a.0.total_cmp(&b.0).then(match (a.1, b.1) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    })
}

impl Serialize for Bar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Bar", 3)?;
        st.serialize_field("birth", &self.birth)?;
        match self.death {
            Some(d) => st.serialize_field("death", &d)?,
            None => st.serialize_field("death", "inf")?,
        }
        st.serialize_field("birth_simplex", &self.birth_simplex)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Barcode {
    pub k: usize,
    pub bars: Vec<Bar>,
}

impl Barcode {
    fn new(k: usize, mut bars: Vec<Bar>) -> Self {
        bars.sort_by(|a, b| {
            cmp_interval(a.interval(), b.interval()).then_with(|| a.birth_simplex.cmp_lex(b.birth_simplex))
        });
        Barcode { k, bars }
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Intervals without annotations, sorted.
    pub fn intervals(&self) -> Vec<(f64, Option<f64>)> {
        self.bars.iter().map(Bar::interval).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("barcode serialization is infallible")
    }
}

/// Bars of dimension `k`. Pairs born and killed at the same value are dropped.
pub fn extract_barcode(rm: &ReducedMatrix, complex: &FilteredComplex, k: usize) -> Result<Barcode> {
    if k >= complex.max_dim() {
        return Err(Error::DimensionOutOfRange {
            k,
            max_dim: complex.max_dim(),
        });
    }
    let s = complex.simplices();
    let mut bars: Vec<Bar> = rm
        .pairs()
        .iter()
        .filter(|&&(i, j)| s[i].simplex.dim() == k && s[i].value < s[j].value)
        .map(|&(i, j)| Bar {
            birth: s[i].value,
            death: Some(s[j].value),
            birth_simplex: s[i].simplex,
        })
        .collect();
    bars.extend(
        rm.essential()
            .iter()
            .filter(|&&i| s[i].simplex.dim() == k)
            .map(|&i| Bar {
                birth: s[i].value,
                death: None,
                birth_simplex: s[i].simplex,
            }),
    );
    Ok(Barcode::new(k, bars))
}

/// `bcd_k(d)` on the `(k+1)`-skeleton. When `k + 1` exceeds `n - 1` there
/// are no `(k+1)`-simplices; the barcode is then empty for `k >= 1` and a
/// single essential class for `k = 0` (`n = 1`).
pub fn compute_barcode(d: &DistanceMatrix, k: usize, ordering: SimplexOrdering) -> Result<Barcode> {
    compute_barcode_capped(d, k, ordering, DEFAULT_SIMPLEX_CAP)
}

pub fn compute_barcode_capped(d: &DistanceMatrix, k: usize, ordering: SimplexOrdering, cap: u128) -> Result<Barcode> {
    let n = d.n();
    if k + 1 > n.saturating_sub(1) {
        let bars = if k == 0 && n == 1 {
            vec![Bar {
                birth: 0.0,
                death: None,
                birth_simplex: Simplex::from_vertices(&[0]),
            }]
        } else {
            Vec::new()
        };
        return Ok(Barcode::new(k, bars));
    }
    let complex = build_filtration_with(d, k + 1, ordering, cap)?;
    extract_barcode(&reduce(&complex), &complex, k)
}
