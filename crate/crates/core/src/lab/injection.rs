//! Bar-by-bar check that `bcd_1` of a smaller distance injects into `bcd_1`
//! of a larger one, keyed by birth edge.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::{kruskal_mst, serialize_graph, SpanningTree, WeightedGraph};
use crate::metric::{compare_pointwise, distance_from_paths, DistanceMatrix, PathMode};
use crate::paths::{classify_dominance, extract_paths, PathChoiceFunction};
use crate::persistence::{compute_barcode, Bar, Barcode, SimplexOrdering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InjectionFailureReason {
    MissingInTarget,
    BirthMismatch,
    DeathDecreased,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectionFailure {
    pub birth_edge: (usize, usize),
    pub reason: InjectionFailureReason,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedBar {
    pub birth_edge: (usize, usize),
    pub source: Bar,
    pub target: Bar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectionReport {
    pub source_distance: String,
    pub target_distance: String,
    pub matched: Vec<MatchedBar>,
    pub unmatched_target: Vec<Bar>,
    pub ok: bool,
    pub failures: Vec<InjectionFailure>,
}

/// The tie-break shared by both sides of a comparison: the canonical
/// Kruskal tree of `g` placed first among equal-valued edges.
pub fn shared_ordering(g: &WeightedGraph) -> Result<(SpanningTree, SimplexOrdering)> {
    let mst = kruskal_mst(g)?;
    let ordering = SimplexOrdering::TreeFirst(mst.edge_pairs());
    Ok((mst, ordering))
}

fn keyed(b: &Barcode) -> BTreeMap<(usize, usize), Bar> {
    let mut out = BTreeMap::new();
    for bar in &b.bars {
        let e = bar.birth_edge().expect("one-dimensional bars are born on edges");
        let dup = out.insert(e, bar.clone());
        assert!(dup.is_none(), "birth edge {e:?} born twice");
    }
    out
}

/// Matches two annotated `bcd_1` barcodes by birth edge.
pub fn match_barcodes(
    source: &Barcode,
    target: &Barcode,
    source_distance: String,
    target_distance: String,
) -> InjectionReport {
    let src = keyed(source);
    let mut tgt = keyed(target);
    let mut matched = Vec::new();
    let mut failures = Vec::new();
    for (e, s) in src {
        let Some(t) = tgt.remove(&e) else {
            failures.push(InjectionFailure {
                birth_edge: e,
                reason: InjectionFailureReason::MissingInTarget,
            });
            continue;
        };
        if s.birth != t.birth {
            failures.push(InjectionFailure {
                birth_edge: e,
                reason: InjectionFailureReason::BirthMismatch,
            });
        }
        let decreased = match (s.death, t.death) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(b), Some(c)) => c < b,
        };
        if decreased {
            failures.push(InjectionFailure {
                birth_edge: e,
                reason: InjectionFailureReason::DeathDecreased,
            });
        }
        matched.push(MatchedBar {
            birth_edge: e,
            source: s,
            target: t,
        });
    }
    let mut unmatched_target: Vec<Bar> = tgt.into_values().collect();
    unmatched_target.sort_by(|a, b| crate::persistence::cmp_interval(a.interval(), b.interval()));
    InjectionReport {
        source_distance,
        target_distance,
        matched,
        unmatched_target,
        ok: failures.is_empty(),
        failures,
    }
}

/// Checks the injection `bcd_1(d_small) -> bcd_1(d_large)` for two
/// cost-dominated path choice functions with `d_small <= d_large`.
pub fn verify_injection(
    g: &WeightedGraph,
    pcf_small: &PathChoiceFunction,
    pcf_large: &PathChoiceFunction,
) -> Result<InjectionReport> {
    for p in [pcf_small, pcf_large] {
        if !classify_dominance(g, p)?.cost_dominated {
            return Err(Error::NotCostDominated);
        }
    }
    let d_small = distance_from_paths(g, pcf_small)?;
    let d_large = distance_from_paths(g, pcf_large)?;
    verify_injection_distances(g, &d_small, &d_large)
}

/// As [`verify_injection`] for distances already known to be cost-dominated
/// and path-representable on `g`.
pub fn verify_injection_distances(
    g: &WeightedGraph,
    d_small: &DistanceMatrix,
    d_large: &DistanceMatrix,
) -> Result<InjectionReport> {
    if !compare_pointwise(d_small, d_large)?.is_le() {
        return Err(Error::NotComparable);
    }
    let (_, ordering) = shared_ordering(g)?;
    let source = compute_barcode(d_small, 1, ordering.clone())?;
    let target = compute_barcode(d_large, 1, ordering)?;
    Ok(match_barcodes(
        &source,
        &target,
        d_small.provenance().to_string(),
        d_large.provenance().to_string(),
    ))
}

/// A failing corpus instance with enough detail to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignFailure {
    pub index: usize,
    pub graph_seed: u64,
    pub graph: String,
    pub report: InjectionReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub corpus: Corpus,
    pub small: PathMode,
    pub large: PathMode,
    pub checked: usize,
    pub bars_matched: usize,
    pub failures: Vec<CampaignFailure>,
}

impl CampaignSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`verify_injection`] on extraction-mode path systems over a corpus.
pub fn injection_campaign(corpus: &Corpus, small: PathMode, large: PathMode) -> Result<CampaignSummary> {
    corpus.validate()?;
    let results: Vec<Result<(usize, Option<CampaignFailure>)>> = (0..corpus.count)
        .into_par_iter()
        .map(|i| {
            let inst = corpus.instance(i)?;
            let g = &inst.graph;
            let report = verify_injection(g, &extract_paths(g, small)?, &extract_paths(g, large)?)?;
            let matched = report.matched.len();
            let failure = (!report.ok).then(|| CampaignFailure {
                index: i,
                graph_seed: inst.graph_seed,
                graph: serialize_graph(g),
                report,
            });
            Ok((matched, failure))
        })
        .collect();
    let mut bars_matched = 0;
    let mut failures = Vec::new();
    for r in results {
        let (m, f) = r?;
        bars_matched += m;
        failures.extend(f);
    }
    Ok(CampaignSummary {
        corpus: corpus.clone(),
        small,
        large,
        checked: corpus.count,
        bars_matched,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;
    use crate::metric::PathMode;
    use crate::persistence::{build_filtration_with, mst_from_reduction, reduce, DEFAULT_SIMPLEX_CAP};

    #[test]
    fn identity_matching() {
        let g = cycle_graph(5, &[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let p = extract_paths(&g, PathMode::Weight).unwrap();
        let r = verify_injection(&g, &p, &p).unwrap();
        assert!(r.ok);
        assert_eq!(r.matched.len(), 1);
        assert!(r.unmatched_target.is_empty());
        assert_eq!(r.matched[0].source, r.matched[0].target);
    }

    #[test]
    fn rejects_reversed_order() {
        // Triangle with a shortcut: d_weight < d_edge at (0, 2).
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0), (2, 3, 1.0), (0, 3, 1.0)]).unwrap();
        let w = extract_paths(&g, PathMode::Weight).unwrap();
        let e = extract_paths(&g, PathMode::Edge).unwrap();
        assert!(verify_injection(&g, &w, &e).is_ok());
        assert_eq!(verify_injection(&g, &e, &w).unwrap_err(), Error::NotComparable);
    }

    #[test]
    fn rejects_non_cost_dominated() {
        let g = WeightedGraph::new(3, [(0, 1, 2.0), (1, 2, 2.0), (0, 2, 3.0)]).unwrap();
        let p = PathChoiceFunction::from_routes(&g, "x", vec![vec![0, 1], vec![0, 1, 2], vec![1, 2]]).unwrap();
        let w = extract_paths(&g, PathMode::Weight).unwrap();
        assert_eq!(verify_injection(&g, &w, &p).unwrap_err(), Error::NotCostDominated);
    }

    #[test]
    fn shared_tree_is_the_reduction_tree_on_both_sides() {
        let corpus = Corpus::new(3, 60, (4, 9), (0.3, 0.8), (1, 4));
        for inst in corpus.instances() {
            let g = inst.unwrap().graph;
            let (mst, ord) = shared_ordering(&g).unwrap();
            for mode in [PathMode::Weight, PathMode::Edge] {
                let d = distance_from_paths(&g, &extract_paths(&g, mode).unwrap()).unwrap();
                let c = build_filtration_with(&d, 2, ord.clone(), DEFAULT_SIMPLEX_CAP).unwrap();
                assert_eq!(mst_from_reduction(&reduce(&c), &c).unwrap().key(), mst.key());
            }
        }
    }

    #[test]
    fn small_campaign() {
        let s = injection_campaign(&Corpus::new(1, 100, (3, 9), (0.2, 0.9), (1, 10)), PathMode::Weight, PathMode::Edge)
            .unwrap();
        assert!(s.ok(), "{:?}", s.failures);
        assert_eq!(s.checked, 100);
    }

    #[test]
    fn failure_reasons() {
        let d = crate::metric::DistanceMatrix::from_rows(
            vec![
                vec![0.0, 1.0, 2.0, 1.0],
                vec![1.0, 0.0, 1.0, 2.0],
                vec![2.0, 1.0, 0.0, 1.0],
                vec![1.0, 2.0, 1.0, 0.0],
            ],
            crate::metric::Provenance::Weight,
        )
        .unwrap();
        let b = compute_barcode(&d, 1, SimplexOrdering::Lexicographic).unwrap();
        let empty = Barcode { k: 1, bars: vec![] };
        let r = match_barcodes(&b, &empty, "a".into(), "b".into());
        assert!(!r.ok);
        assert_eq!(r.failures[0].reason, InjectionFailureReason::MissingInTarget);
        let mut shorter = b.clone();
        shorter.bars[0].death = Some(1.5);
        shorter.bars[0].birth = 0.5;
        let r = match_barcodes(&b, &shorter, "a".into(), "b".into());
        let reasons: Vec<_> = r.failures.iter().map(|f| f.reason).collect();
        assert_eq!(reasons, vec![InjectionFailureReason::BirthMismatch, InjectionFailureReason::DeathDecreased]);
    }
}
