//! Shared corpus and brute-force oracles for the integration tests.
//!
//! The oracles here use only the public graph accessors and plain
//! enumeration, so they are independent of the library's pruning and
//! structure detection.

#![allow(dead_code)]

use matchpoly::graph::{make_family, Family, Graph};

pub struct Entry {
    pub name: &'static str,
    pub graph: Graph,
}

fn entry(name: &'static str, graph: Graph) -> Entry {
    Entry { name, graph }
}

fn fam(f: Family) -> Graph {
    make_family(&f).expect("family")
}

fn edges(n: usize, list: &[(usize, usize)]) -> Graph {
    Graph::new(n, list.iter().copied()).expect("graph")
}

/// Connected graphs with at most 10 edges: trees, odd and even cycles,
/// wheels, every block template (bipartite, K3, K4, K_{1,1,2}, C'5) and
/// a few glued combinations.
pub fn corpus() -> Vec<Entry> {
    vec![
        entry("K2", fam(Family::Path(2))),
        entry("P3", fam(Family::Path(3))),
        entry("P5", fam(Family::Path(5))),
        entry("K1,3", fam(Family::CompleteMultipartite(vec![1, 3]))),
        entry("spider", edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])),
        entry("C3", fam(Family::Cycle(3))),
        entry("C4", fam(Family::Cycle(4))),
        entry("C5", fam(Family::Cycle(5))),
        entry("C6", fam(Family::Cycle(6))),
        entry("C7", fam(Family::Cycle(7))),
        entry("K4", fam(Family::CompleteMultipartite(vec![1, 1, 1, 1]))),
        entry("K1,1,2", fam(Family::CompleteMultipartite(vec![1, 1, 2]))),
        entry("K1,1,3", fam(Family::CompleteMultipartite(vec![1, 1, 3]))),
        entry("K2,3", fam(Family::CompleteMultipartite(vec![2, 3]))),
        entry("C'5", fam(Family::ChortlingC5)),
        entry("C*5", fam(Family::ChordedC5)),
        entry(
            "C'5+pendant",
            edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3), (2, 4), (0, 5)]),
        ),
        entry("W5", fam(Family::Wheel(5))),
        entry("W6", fam(Family::Wheel(6))),
        entry("paw", edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])),
        entry("bowtie", edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])),
        entry(
            "K4+pendant",
            edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]),
        ),
        entry("C4+pendant", edges(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)])),
        entry(
            "C5+pendant",
            edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5)]),
        ),
        entry(
            "triangles+bridge",
            edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]),
        ),
        entry(
            "diamond+triangle",
            edges(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5)]),
        ),
        entry(
            "C6+chord",
            edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)]),
        ),
        entry(
            "C5+chord05",
            edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]),
        ),
        entry(
            "K2,3+pendant",
            edges(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (4, 5)]),
        ),
        entry(
            "C5-C5",
            edges(
                9,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (0, 4),
                    (4, 5),
                    (5, 6),
                    (6, 7),
                    (7, 8),
                    (4, 8),
                ],
            ),
        ),
        entry("house", edges(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)])),
    ]
}

/// `true` when `vertices` induce a connected subgraph of `g`.
fn connected_within(g: &Graph, vertices: &[usize]) -> bool {
    let Some(&first) = vertices.first() else {
        return true;
    };
    let inside = |v: usize| vertices.contains(&v);
    let mut seen = vec![first];
    let mut stack = vec![first];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if inside(w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == vertices.len()
}

/// Perfect matching of the subgraph induced by `vertices`, by recursion on
/// the smallest vertex.
fn has_perfect_matching(g: &Graph, vertices: &[usize]) -> bool {
    let Some((&u, rest)) = vertices.split_first() else {
        return true;
    };
    rest.iter().any(|&w| {
        g.has_edge(u, w) && {
            let remaining: Vec<usize> = rest.iter().copied().filter(|&v| v != w).collect();
            has_perfect_matching(g, &remaining)
        }
    })
}

/// Odd vertex sets of size at least 3 inducing a 2-connected
/// factor-critical subgraph, by scanning every subset.
pub fn brute_odd_structures(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if set.len() < 3 || set.len().is_multiple_of(2) || !connected_within(g, &set) {
            continue;
        }
        let two_connected_and_critical = set.iter().all(|&v| {
            let rest: Vec<usize> = set.iter().copied().filter(|&w| w != v).collect();
            connected_within(g, &rest) && has_perfect_matching(g, &rest)
        });
        if two_connected_and_critical {
            out.push(set);
        }
    }
    out
}

/// Every vertex sum at most `t` and every odd-structure sum at most
/// `t (|U| - 1) / 2`, with the structures from [`brute_odd_structures`].
pub fn brute_is_t_matching(g: &Graph, structures: &[Vec<usize>], x: &[u32], t: u32) -> bool {
    let vertex_ok =
        (0..g.vertex_count()).all(|u| g.incident_edges(u).iter().map(|&e| x[e] as u64).sum::<u64>() <= t as u64);
    vertex_ok
        && structures.iter().all(|s| {
            let sum: u64 = (0..g.edge_count())
                .filter(|&e| {
                    let (u, v) = g.edge(e);
                    s.contains(&u) && s.contains(&v)
                })
                .map(|e| x[e] as u64)
                .sum();
            sum <= t as u64 * (s.len() as u64 - 1) / 2
        })
}

/// Every vector in `{0..=t}^E` passing [`brute_is_t_matching`], in
/// lexicographic order.
pub fn box_scan(g: &Graph, t: u32) -> Vec<Vec<u32>> {
    let structures = brute_odd_structures(g);
    let m = g.edge_count();
    let mut out = Vec::new();
    let mut x = vec![0u32; m];
    loop {
        if brute_is_t_matching(g, &structures, &x, t) {
            out.push(x.clone());
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < t {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}
