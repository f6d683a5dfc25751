//! Plain-text edge lists.
//!
//! ```text
//! # optional comment lines
//! n 4
//! 0 1 1.0
//! 1 2 2.5
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Parses an edge-list document. The vertex count is `1 + max id` unless an
/// `n <count>` header is present.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let malformed = |reason: &str| Error::MalformedLine {
            line,
            reason: reason.to_string(),
        };

        if fields[0] == "n" {
            if fields.len() != 2 {
                return Err(malformed("header must be `n <vertex_count>`"));
            }
            if declared.is_some() || !edges.is_empty() {
                return Err(malformed("header must appear once, before any edge"));
            }
            let n: usize = fields[1].parse().map_err(|_| malformed("vertex count is not an integer"))?;
            if n == 0 {
                return Err(Error::EmptyGraph);
            }
            declared = Some(n);
            continue;
        }

        if fields.len() != 3 {
            return Err(malformed("expected `<u> <v> <w>`"));
        }
        let u: usize = fields[0].parse().map_err(|_| malformed("vertex id is not an integer"))?;
        let v: usize = fields[1].parse().map_err(|_| malformed("vertex id is not an integer"))?;
        let w: f64 = fields[2].parse().map_err(|_| malformed("weight is not a number"))?;
        if !w.is_finite() {
            return Err(malformed("weight is not finite"));
        }
        if w <= 0.0 {
            return Err(Error::NonPositiveWeight { line, weight: w });
        }
        if u == v {
            return Err(Error::SelfLoop { line, v: u });
        }
        if let Some(n) = declared {
            if u.max(v) >= n {
                return Err(Error::VertexOutOfRange { line, v: u.max(v), n });
            }
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge { line, u: key.0, v: key.1 });
        }
        edges.push((u, v, w));
    }

    let n = match declared {
        Some(n) => n,
        None => edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .ok_or(Error::EmptyGraph)?,
    };
    WeightedGraph::new(n, edges)
}

/// Serializes with an `n` header and edges in canonical order. Weights use
/// the shortest representation that parses back to the same `f64`.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", g.vertex_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_path_graph() {
        let g = parse_graph("0 1 1.0\n1 2 2.0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        let weights: Vec<f64> = g.edges().iter().map(|e| e.w).collect();
        assert_eq!(weights, vec![1.0, 2.0]);
    }

    #[test]
    fn header_and_comments() {
        let g = parse_graph("# a comment\nn 5\n\n0 1 3\n# another\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn distinct_errors_with_line_numbers() {
        assert_eq!(
            parse_graph("0 1 1\n0 1 2"),
            Err(Error::DuplicateEdge { line: 2, u: 0, v: 1 })
        );
        assert_eq!(parse_graph("0 0 1"), Err(Error::SelfLoop { line: 1, v: 0 }));
        assert_eq!(
            parse_graph("0 1 1\n1 2 0"),
            Err(Error::NonPositiveWeight { line: 2, weight: 0.0 })
        );
        assert!(matches!(parse_graph("0 1"), Err(Error::MalformedLine { line: 1, .. })));
        assert!(matches!(parse_graph("0 x 1"), Err(Error::MalformedLine { line: 1, .. })));
        assert_eq!(
            parse_graph("n 2\n0 2 1"),
            Err(Error::VertexOutOfRange { line: 2, v: 2, n: 2 })
        );
        assert_eq!(parse_graph("# nothing\n"), Err(Error::EmptyGraph));
    }

    #[test]
    fn reversed_duplicate_is_detected() {
        assert!(matches!(parse_graph("1 0 1\n0 1 1"), Err(Error::DuplicateEdge { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(
            n in 1usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9, 0.01f64..1e6), 0..30),
        ) {
            let mut seen = HashSet::new();
            let edges: Vec<_> = raw
                .into_iter()
                .filter(|&(u, v, _)| u < n && v < n && u != v && seen.insert((u.min(v), u.max(v))))
                .collect();
            let g = WeightedGraph::new(n, edges).unwrap();
            let back = parse_graph(&serialize_graph(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
