//! Plain edge lists: one `u v` per line with 1-based vertices, or `u j,k`
//! for a bipartite graph whose right vertices are coordinate pairs. Lines
//! starting with `#` are comments.

use std::fmt::Write;

use trifferent_core::graphs::{DerivedGraph, GraphKind, RightVertex};

use crate::format::ParseError;

pub fn write_edge_list(graph: &DerivedGraph) -> String {
    let mut out = String::new();
    let kind = match graph.kind() {
        GraphKind::Simple => "simple",
        GraphKind::Bipartite => "bipartite",
    };
    writeln!(out, "# {kind} n={} edges={}", graph.left_count(), graph.edge_count()).unwrap();
    for e in graph.edges() {
        match e.right {
            RightVertex::Coord(j) => writeln!(out, "{} {}", e.left + 1, j + 1),
            RightVertex::Pair(j, k) => writeln!(out, "{} {},{}", e.left + 1, j + 1, k + 1),
        }
        .unwrap();
    }
    out
}

fn vertex(line: usize, text: &str) -> Result<usize, ParseError> {
    match text.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(ParseError { line, message: format!("`{text}` is not a 1-based vertex") }),
    }
}

/// Parses an edge list. The vertex count is `n` if given, else the largest
/// vertex mentioned. All lines must agree on simple versus bipartite.
pub fn parse_edge_list(text: &str, n: Option<usize>) -> Result<DerivedGraph, ParseError> {
    let mut simple = Vec::new();
    let mut pairs = Vec::new();
    let mut max = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(ParseError { line, message: format!("expected `u v`, found `{raw}`") });
        };
        let u = vertex(line, u)?;
        max = max.max(u + 1);
        if let Some((j, k)) = v.split_once(',') {
            let (j, k) = (vertex(line, j)?, vertex(line, k)?);
            if j >= k {
                return Err(ParseError { line, message: "pair vertices need j < k".into() });
            }
            max = max.max(k + 1);
            pairs.push((line, u, (j, k)));
        } else {
            let v = vertex(line, v)?;
            if u == v {
                return Err(ParseError { line, message: "self-loop".into() });
            }
            max = max.max(v + 1);
            simple.push((line, u, v));
        }
        if !simple.is_empty() && !pairs.is_empty() {
            return Err(ParseError { line, message: "mixes simple and bipartite edges".into() });
        }
    }
    let n = match n {
        Some(n) if n < max => {
            return Err(ParseError { line: 0, message: format!("vertex {max} exceeds n={n}") });
        }
        Some(n) => n,
        None => max,
    };
    let graph = if pairs.is_empty() {
        DerivedGraph::simple(n, &simple.iter().map(|&(_, u, v)| (u, v)).collect::<Vec<_>>())
    } else {
        DerivedGraph::bipartite(n, &pairs.iter().map(|&(_, u, p)| (u, p)).collect::<Vec<_>>())
    };
    graph.map_err(|e| ParseError { line: 0, message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use trifferent_core::graphs::build_graph_r2;
    use trifferent_core::Code;

    #[test]
    fn round_trip() {
        let code = Code::from_strs(&["2200", "0220", "1022", "2002"]).unwrap();
        let g = build_graph_r2(&code).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "# simple n=4 edges=4\n1 2\n1 4\n2 3\n3 4\n");
        let back = parse_edge_list(&text, Some(4)).unwrap();
        assert_eq!(write_edge_list(&back), text);

        let b = parse_edge_list("1 2,3\n4 1,2\n", None).unwrap();
        assert_eq!(b.kind(), GraphKind::Bipartite);
        assert_eq!(write_edge_list(&b), "# bipartite n=4 edges=2\n1 2,3\n4 1,2\n");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_edge_list("1 2\n3\n", None).unwrap_err().line, 2);
        assert_eq!(parse_edge_list("1 2\n0 1\n", None).unwrap_err().line, 2);
        assert_eq!(parse_edge_list("1 1\n", None).unwrap_err().line, 1);
        assert_eq!(parse_edge_list("1 2\n1 2,3\n", None).unwrap_err().line, 2);
        assert_eq!(parse_edge_list("1 3,2\n", None).unwrap_err().line, 1);
        assert!(parse_edge_list("1 5\n", Some(3)).is_err());
    }
}
