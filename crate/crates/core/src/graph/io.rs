//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! vertices 4
//! 0 1
//! 1 2
//! ```
//!
//! The `vertices N` directive is optional and must be the first
//! non-comment line; without it the vertex count is one more than the
//! largest endpoint.

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut first = true;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if first && fields[0] == "vertices" {
            first = false;
            if fields.len() != 2 {
                return Err(Error::input(format!("line {}: expected `vertices N`", lineno + 1)));
            }
            let n = fields[1]
                .parse()
                .map_err(|_| Error::input(format!("line {}: bad vertex count {:?}", lineno + 1, fields[1])))?;
            declared = Some(n);
            continue;
        }
        first = false;
        if fields.len() != 2 {
            return Err(Error::input(format!(
                "line {}: expected `u v`, got {:?}",
                lineno + 1,
                line
            )));
        }
        let parse = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::input(format!("line {}: bad vertex {:?}", lineno + 1, s)))
        };
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::new(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_directive() {
        let g = parse_edge_list("# square\nvertices 5\n0 1\n1 2\n\n2 3\n3 0\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn infers_vertex_count() {
        let g = parse_edge_list("0 1\n1 4\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "0 0\n",
            "0 1\n1 0\n",
            "vertices 2\n0 2\n",
            "0 1 2\n",
            "a b\n",
            "0 1\nvertices 3\n",
        ] {
            assert!(matches!(parse_edge_list(text), Err(Error::Input(_))), "{text:?}");
        }
    }

    #[test]
    fn round_trip() {
        let g = Graph::new(4, [(0, 1), (2, 3), (1, 3)]).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }
}
