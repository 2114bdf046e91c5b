use std::fmt;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with fixed vertex conventions.
///
/// * `Path(n)`: vertices `0..n`, edges `{i, i+1}`.
/// * `Cycle(n)`: the path plus `{n-1, 0}`.
/// * `Wheel(n)`: rim `0..n-1` as a cycle of length `n-1`, centre `n-1`
///   joined to every rim vertex by a spoke.
/// * `CompleteMultipartite(parts)`: consecutive vertex blocks of the given
///   sizes, all cross-part edges.
/// * `ChortlingC5`: the 5-cycle `0-1-2-3-4` with chords `{1,3}` and `{2,4}`.
/// * `ChordedC5`: the 5-cycle with the single chord `{1,4}`, so that the
///   triangle `{0,1,4}` sits on top of the 4-cycle `1-2-3-4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Wheel(usize),
    CompleteMultipartite(Vec<usize>),
    ChortlingC5,
    ChordedC5,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "P({n})"),
            Family::Cycle(n) => write!(f, "C{n}"),
            Family::Wheel(n) => write!(f, "W{n}"),
            Family::CompleteMultipartite(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "K_{{{}}}", parts.join(","))
            }
            Family::ChortlingC5 => write!(f, "C'5"),
            Family::ChordedC5 => write!(f, "C*5"),
        }
    }
}

pub fn make_family(family: &Family) -> Result<Graph> {
    match *family {
        Family::Path(n) => {
            if n < 1 {
                return Err(Error::input("path needs at least 1 vertex"));
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::input("cycle needs at least 3 vertices"));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Wheel(n) => {
            if n < 4 {
                return Err(Error::input("wheel needs at least 4 vertices"));
            }
            let rim = n - 1;
            let center = n - 1;
            let rim_edges = (0..rim).map(move |i| (i, (i + 1) % rim));
            let spokes = (0..rim).map(move |i| (i, center));
            Graph::new(n, rim_edges.chain(spokes))
        }
        Family::CompleteMultipartite(ref parts) => {
            if parts.len() < 2 || parts.contains(&0) {
                return Err(Error::input(
                    "complete multipartite graph needs at least 2 parts, each non-empty",
                ));
            }
            let mut part_of = Vec::new();
            for (i, &p) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(i, p));
            }
            let n = part_of.len();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if part_of[u] != part_of[v] {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges)
        }
        Family::ChortlingC5 => Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3), (2, 4)]),
        Family::ChordedC5 => Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let w4 = make_family(&Family::Wheel(4)).unwrap();
        assert_eq!((w4.vertex_count(), w4.edge_count()), (4, 6));
        let c3 = make_family(&Family::Cycle(3)).unwrap();
        assert_eq!((c3.vertex_count(), c3.edge_count()), (3, 3));
        let c5p = make_family(&Family::ChortlingC5).unwrap();
        assert_eq!((c5p.vertex_count(), c5p.edge_count()), (5, 7));
        let c5s = make_family(&Family::ChordedC5).unwrap();
        assert_eq!((c5s.vertex_count(), c5s.edge_count()), (5, 6));
        let k112 = make_family(&Family::CompleteMultipartite(vec![1, 1, 2])).unwrap();
        assert_eq!((k112.vertex_count(), k112.edge_count()), (4, 5));
    }

    #[test]
    fn wheel_center_is_last() {
        let w6 = make_family(&Family::Wheel(6)).unwrap();
        assert_eq!(w6.degree(5), 5);
        assert!((0..5).all(|i| w6.degree(i) == 3));
        assert!(w6.has_edge(4, 0));
    }

    #[test]
    fn out_of_range() {
        for f in [
            Family::Path(0),
            Family::Cycle(2),
            Family::Wheel(3),
            Family::CompleteMultipartite(vec![3]),
            Family::CompleteMultipartite(vec![1, 0]),
        ] {
            assert!(matches!(make_family(&f), Err(Error::Input(_))), "{f:?}");
        }
    }
}
