use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use barbed_core::graph::{kruskal_mst, parse_graph, WeightedGraph};
use barbed_core::lab::{
    check_mst_invariance, cost_dominated_distances, cycle_no_greatest_certificate, injection_campaign,
    poset_extremes, search_counterexample, verify_injection, Corpus,
};
use barbed_core::metric::{compare_pointwise, d_edge, d_weight, distance_for_mode, DistanceMatrix, PathMode};
use barbed_core::paths::{classify_dominance, enumerate_pcfs_filtered, extract_paths, graph_completion};
use barbed_core::persistence::{
    build_filtration, build_filtration_with, compute_barcode, extract_barcode, naive_homology_oracle, reduce,
    SimplexOrdering, DEFAULT_SIMPLEX_CAP, ORACLE_VERTEX_CAP,
};
use barbed_core::PathChoiceFunction;

use crate::output::emit;
use crate::{Cli, Command, CorpusArgs, Mode, Ordering};

/// Process exit status for a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Outcome {
    Verified = 0,
    Violated = 1,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Verified
        } else {
            Outcome::Violated
        }
    }
}

/// `weight`, `edge` or `pcf:<file>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceSpec {
    Mode(PathMode),
    Pcf(PathBuf),
}

impl FromStr for DistanceSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "weight" => Ok(DistanceSpec::Mode(PathMode::Weight)),
            "edge" => Ok(DistanceSpec::Mode(PathMode::Edge)),
            _ => match s.strip_prefix("pcf:") {
                Some(path) if !path.is_empty() => Ok(DistanceSpec::Pcf(PathBuf::from(path))),
                _ => Err(format!("expected `weight`, `edge` or `pcf:<file>`, got `{s}`")),
            },
        }
    }
}

impl std::fmt::Display for DistanceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistanceSpec::Mode(m) => write!(f, "{m}"),
            DistanceSpec::Pcf(p) => write!(f, "pcf:{}", p.display()),
        }
    }
}

struct Resolved {
    graph: WeightedGraph,
    pcf: PathChoiceFunction,
    distance: DistanceMatrix,
}

fn load_graph(cli: &Cli) -> Result<Option<WeightedGraph>> {
    let Some(path) = &cli.graph else { return Ok(None) };
    let text = fs::read_to_string(path).with_context(|| format!("--graph: cannot read {}", path.display()))?;
    let g = parse_graph(&text).with_context(|| format!("--graph: {}", path.display()))?;
    Ok(Some(g))
}

fn require_graph(g: Option<WeightedGraph>) -> Result<WeightedGraph> {
    g.context("--graph <file> is required for this command")
}

fn resolve(spec: &DistanceSpec, graph: Option<&WeightedGraph>) -> Result<Resolved> {
    match spec {
        DistanceSpec::Mode(mode) => {
            let g = graph.context("--graph <file> is required for weight and edge distances")?.clone();
            let pcf = extract_paths(&g, *mode)?;
            let distance = distance_for_mode(&g, *mode)?;
            Ok(Resolved { graph: g, pcf, distance })
        }
        DistanceSpec::Pcf(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let (g, pcf) = PathChoiceFunction::from_json(&text, graph).with_context(|| format!("{}", path.display()))?;
            if let Some(given) = graph {
                if *given != g {
                    bail!("{}: inline graph differs from --graph", path.display());
                }
            }
            let distance = barbed_core::metric::distance_from_paths(&g, &pcf)?;
            Ok(Resolved { graph: g, pcf, distance })
        }
    }
}

fn corpus(seed: u64, count: usize, a: &CorpusArgs) -> Corpus {
    Corpus::new(seed, count, (a.n_min, a.n_max), (a.p_min, a.p_max), (a.w_min, a.w_max))
}

fn interval_json(iv: &(f64, Option<f64>)) -> Value {
    match iv.1 {
        Some(d) => json!([iv.0, d]),
        None => json!([iv.0, "inf"]),
    }
}

fn graph_json(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g.edges().iter().map(|e| json!([e.u, e.v, e.w])).collect();
    json!({ "n": g.vertex_count(), "edges": edges })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.verbose > 0 {
        eprintln!("seed = {}", cli.seed);
    }
    let graph = load_graph(cli)?;
    let (doc, outcome) = match &cli.command {
        Command::Distances { mode } => {
            let g = require_graph(graph)?;
            let doc = match mode {
                Mode::Weight => serde_json::to_value(d_weight(&g)?)?,
                Mode::Edge => serde_json::to_value(d_edge(&g)?)?,
                Mode::Both => {
                    let (w, e) = (d_weight(&g)?, d_edge(&g)?);
                    json!({ "weight": w, "edge": e, "comparison": compare_pointwise(&w, &e)? })
                }
            };
            (doc, Outcome::Verified)
        }
        Command::Barcode {
            k,
            max_dim,
            distance,
            ordering,
        } => {
            let r = resolve(distance, graph.as_ref())?;
            let ordering = match ordering {
                Ordering::Lexicographic => SimplexOrdering::Lexicographic,
                Ordering::Shuffled => SimplexOrdering::Shuffled(cli.seed),
                Ordering::TreeFirst => SimplexOrdering::TreeFirst(kruskal_mst(&r.graph)?.edge_pairs()),
            };
            let barcode = match max_dim {
                None => compute_barcode(&r.distance, *k, ordering)?,
                Some(m) => {
                    let c = build_filtration_with(&r.distance, *m, ordering, DEFAULT_SIMPLEX_CAP)
                        .context("--max-dim")?;
                    extract_barcode(&reduce(&c), &c, *k).context("--k")?
                }
            };
            (serde_json::to_value(&barcode)?, Outcome::Verified)
        }
        Command::EnumeratePcf { filter, count_only } => {
            let g = require_graph(graph)?;
            let all = enumerate_pcfs_filtered(&g, (*filter).into())?;
            let mut doc = json!({ "filter": barbed_core::paths::DominanceFilter::from(*filter), "count": all.len() });
            if !count_only {
                let pcfs: Vec<Value> = all
                    .iter()
                    .map(|p| json!({ "id": p.id(), "paths": p.to_json_value(None)["paths"] }))
                    .collect();
                doc["pcfs"] = Value::Array(pcfs);
            }
            (doc, Outcome::Verified)
        }
        Command::Classify { distance } => {
            let r = resolve(distance, graph.as_ref())?;
            let report = classify_dominance(&r.graph, &r.pcf)?;
            (
                json!({ "distance": distance.to_string(), "weight_dominated": report.weight_dominated, "cost_dominated": report.cost_dominated }),
                Outcome::Verified,
            )
        }
        Command::Completion { distance } => {
            let r = resolve(distance, graph.as_ref())?;
            (graph_json(&graph_completion(&r.graph, &r.pcf)?), Outcome::Verified)
        }
        Command::MstCheck { distance } => {
            let r = resolve(distance, graph.as_ref())?;
            let report = check_mst_invariance(&r.graph, &r.pcf)?;
            // Only a weight-dominated system is required to keep the MST set.
            let outcome = Outcome::from_ok(report.equal || !report.weight_dominated);
            (serde_json::to_value(&report)?, outcome)
        }
        Command::VerifyInjection {
            small,
            large,
            corpus: Some(count),
            family,
        } => {
            let (DistanceSpec::Mode(s), DistanceSpec::Mode(l)) = (small, large) else {
                bail!("--corpus supports only `weight` and `edge` for --small and --large");
            };
            let summary = injection_campaign(&corpus(cli.seed, *count, family), *s, *l)?;
            let outcome = Outcome::from_ok(summary.ok());
            (serde_json::to_value(&summary)?, outcome)
        }
        Command::VerifyInjection { small, large, .. } => {
            let s = resolve(small, graph.as_ref())?;
            let l = resolve(large, Some(&s.graph))?;
            let report = verify_injection(&s.graph, &s.pcf, &l.pcf)?;
            let outcome = Outcome::from_ok(report.ok);
            (serde_json::to_value(&report)?, outcome)
        }
        Command::Poset => {
            let g = require_graph(graph)?;
            let set = cost_dominated_distances(&g)?;
            let ds: Vec<DistanceMatrix> = set.iter().map(|(_, d)| d.clone()).collect();
            let ext = poset_extremes(&ds)?;
            let dw = d_weight(&g)?;
            let least_is_weight = ext.least.is_some_and(|i| ds[i].values() == dw.values());
            let id = |i: Option<usize>| i.map(|i| set[i].0.id().to_string());
            let doc = json!({
                "count": ds.len(),
                "least": ext.least,
                "least_pcf": id(ext.least),
                "least_is_d_weight": least_is_weight,
                "greatest": ext.greatest,
                "greatest_pcf": id(ext.greatest),
                "no_greatest_certificate": cycle_no_greatest_certificate(&g),
            });
            (doc, Outcome::from_ok(least_is_weight))
        }
        Command::SearchCounterexample { k, trials, family } => {
            let budget = corpus(cli.seed, *trials, family);
            let witness = search_counterexample(*k, &budget)?;
            if cli.verbose > 0 {
                eprintln!("search k={k}: {}", if witness.is_some() { "witness found" } else { "none found" });
            }
            let doc = json!({
                "k": k,
                "seed": cli.seed,
                "budget": budget,
                "found": witness.is_some(),
                "witness": witness,
            });
            (doc, Outcome::Verified)
        }
        Command::OracleDiff { distance, max_dim } => {
            let r = resolve(distance, graph.as_ref())?;
            let n = r.distance.n();
            if n > ORACLE_VERTEX_CAP {
                bail!("oracle cap: at most {ORACLE_VERTEX_CAP} vertices, graph has {n}");
            }
            let top = (*max_dim).min(n.saturating_sub(1));
            if top == 0 {
                bail!("--max-dim: need at least two vertices and max-dim >= 1");
            }
            let c = build_filtration(&r.distance, top).context("--max-dim")?;
            let rm = reduce(&c);
            let mut agree = true;
            let mut dims = Vec::new();
            for k in 0..top {
                let engine = extract_barcode(&rm, &c, k)?.intervals();
                let oracle = naive_homology_oracle(&c, k)?;
                agree &= engine == oracle;
                dims.push(json!({
                    "k": k,
                    "agree": engine == oracle,
                    "engine": engine.iter().map(interval_json).collect::<Vec<_>>(),
                    "oracle": oracle.iter().map(interval_json).collect::<Vec<_>>(),
                }));
            }
            (json!({ "agree": agree, "dimensions": dims }), Outcome::from_ok(agree))
        }
    };
    emit(cli.format, cli.out.as_deref(), &doc)?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_specs() {
        assert_eq!("weight".parse(), Ok(DistanceSpec::Mode(PathMode::Weight)));
        assert_eq!("pcf:a.json".parse(), Ok(DistanceSpec::Pcf("a.json".into())));
        assert!("pcf:".parse::<DistanceSpec>().is_err());
        assert!("hops".parse::<DistanceSpec>().is_err());
    }
}
