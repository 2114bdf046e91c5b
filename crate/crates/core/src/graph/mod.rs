//! Finite simple graphs with a canonical edge order.
//!
//! Edges are stored sorted lexicographically by `(min endpoint, max endpoint)`.
//! The position of an edge in that order is its *edge index*; every edge
//! weighting in this crate is a vector indexed by it.

mod blocks;
mod families;
mod io;
mod matching;

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use blocks::{blocks, Block, BlockDecomposition};
pub use families::{make_family, Family};
pub use io::{parse_edge_list, to_edge_list};
pub use matching::{has_perfect_matching, maximum_matching};

pub type Vertex = usize;
pub type EdgeIndex = usize;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(skip)]
    adjacency: Vec<Vec<Vertex>>,
    #[serde(skip)]
    incidence: Vec<Vec<EdgeIndex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range
    /// endpoints. Edge endpoints may be given in either order.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::input(format!(
                    "edge {{{u}, {v}}} has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge {{{}, {}}}", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted(vertex_count, list))
    }

    fn from_sorted(vertex_count: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut incidence = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push(v);
            adjacency[v].push(u);
            incidence[u].push(i);
            incidence[v].push(i);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Graph {
            vertex_count,
            edges,
            adjacency,
            incidence,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted(vertex_count, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIndex) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Sorted neighbour list of `u`.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adjacency[u]
    }

    /// Indices of the edges incident to `u`, ascending.
    pub fn incident_edges(&self, u: Vertex) -> &[EdgeIndex] {
        &self.incidence[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<EdgeIndex> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Edge indices of the subgraph induced by `vertices`.
    pub fn induced_edges(&self, vertices: &[Vertex]) -> Vec<EdgeIndex> {
        let mut inside = vec![false; self.vertex_count];
        for &v in vertices {
            inside[v] = true;
        }
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                inside[u] && inside[v]
            })
            .collect()
    }

    /// The subgraph induced by `vertices`, relabelled `0..vertices.len()` in
    /// the order given. Returns the graph and, for each of its edges, the
    /// index of the corresponding edge here.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<EdgeIndex>) {
        let mut label = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            label[v] = i;
        }
        let mut pairs: Vec<((Vertex, Vertex), EdgeIndex)> = self
            .induced_edges(vertices)
            .into_iter()
            .map(|e| {
                let (u, v) = self.edges[e];
                let (a, b) = (label[u], label[v]);
                ((a.min(b), a.max(b)), e)
            })
            .collect();
        pairs.sort_unstable();
        let map = pairs.iter().map(|&(_, e)| e).collect();
        let graph = Graph::from_sorted(vertices.len(), pairs.into_iter().map(|(p, _)| p).collect());
        (graph, map)
    }

    /// The spanning subgraph keeping only the listed edges (same vertex set).
    /// Because the edge order is inherited, the returned map is increasing.
    pub fn edge_subgraph(&self, keep: &[EdgeIndex]) -> (Graph, Vec<EdgeIndex>) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let edges = keep.iter().map(|&e| self.edges[e]).collect();
        (Graph::from_sorted(self.vertex_count, edges), keep)
    }

    /// `G \ u`: deletes vertex `u`, relabelling the rest in increasing order.
    pub fn remove_vertex(&self, u: Vertex) -> Graph {
        let rest: Vec<Vertex> = (0..self.vertex_count).filter(|&v| v != u).collect();
        self.induced_subgraph(&rest).0
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A graph with at most one vertex counts as connected.
    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.components().len() == 1
    }

    /// Degree sequence, sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count).map(|u| self.degree(u)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Exact isomorphism test by permutation search, with degree pruning.
    /// Meant for the fixed small templates used in classification.
    pub fn is_isomorphic_small(&self, other: &Graph) -> bool {
        self.isomorphism_small(other).is_some()
    }

    /// An isomorphism `image` with `{u, v}` an edge of `self` exactly when
    /// `{image[u], image[v]}` is an edge of `other`.
    pub fn isomorphism_small(&self, other: &Graph) -> Option<Vec<Vertex>> {
        if self.vertex_count != other.vertex_count
            || self.edge_count() != other.edge_count()
            || self.degree_sequence() != other.degree_sequence()
        {
            return None;
        }
        let n = self.vertex_count;
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_isomorphism(other, 0, &mut image, &mut used)
            .then_some(image)
    }

    fn extend_isomorphism(&self, other: &Graph, u: Vertex, image: &mut [usize], used: &mut [bool]) -> bool {
        if u == self.vertex_count {
            return true;
        }
        for cand in 0..other.vertex_count {
            if used[cand] || other.degree(cand) != self.degree(u) {
                continue;
            }
            let consistent = (0..u).all(|w| self.has_edge(u, w) == other.has_edge(cand, image[w]));
            if !consistent {
                continue;
            }
            image[u] = cand;
            used[cand] = true;
            if self.extend_isomorphism(other, u + 1, image, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
}

/// Vertices whose incidence inequality is needed in the minimal description:
/// degree 1 with a degree-1 neighbour, degree 2 with non-adjacent neighbours,
/// or degree at least 3.
pub fn essential_vertices(g: &Graph) -> Vec<Vertex> {
    (0..g.vertex_count()).filter(|&u| is_essential(g, u)).collect()
}

pub fn is_essential(g: &Graph, u: Vertex) -> bool {
    let nbrs = g.neighbors(u);
    match nbrs.len() {
        0 => false,
        1 => g.degree(nbrs[0]) == 1,
        2 => !g.has_edge(nbrs[0], nbrs[1]),
        _ => true,
    }
}

/// `G \ u` has a perfect matching for every vertex `u`. Graphs with an even
/// number of vertices (including the empty graph) are never factor-critical.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n.is_multiple_of(2) {
        return false;
    }
    (0..n).all(|u| has_perfect_matching(&g.remove_vertex(u)))
}

/// Result of a bipartiteness test, with a checkable witness either way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Bipartition {
    /// `coloring[u]` is 0 or 1 and every edge joins different colours.
    Bipartite { coloring: Vec<u8> },
    /// A closed walk `c[0] - c[1] - ... - c[k-1] - c[0]` with `k` odd; it is
    /// a simple cycle of the graph.
    OddCycle { cycle: Vec<Vertex> },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

pub fn is_bipartite(g: &Graph) -> Bipartition {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Bipartition::OddCycle {
                        cycle: odd_cycle_from_tree(u, w, &parent, &depth),
                    };
                }
            }
        }
    }
    Bipartition::Bipartite { coloring: color }
}

// BFS tree paths from both endpoints of a monochromatic edge meet at their
// lowest common ancestor; gluing them gives an odd cycle.
fn odd_cycle_from_tree(u: Vertex, w: Vertex, parent: &[usize], depth: &[usize]) -> Vec<Vertex> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// `L(G)`: one vertex per edge index of `g`, adjacent when the edges share
/// an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..g.vertex_count() {
        let inc = g.incident_edges(u);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Graph::from_sorted(g.edge_count(), pairs)
}

/// `K_{1,1,k}` for some `k >= 1`: two adjacent hubs joined to every other
/// vertex, the others pairwise non-adjacent.
pub fn is_k11n(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 || g.edge_count() != 2 * (n - 2) + 1 {
        return false;
    }
    let hubs: Vec<Vertex> = (0..n).filter(|&u| g.degree(u) == n - 1).collect();
    if hubs.len() < 2 {
        return false;
    }
    let (a, b) = (hubs[0], hubs[1]);
    (0..n)
        .filter(|&u| u != a && u != b)
        .all(|u| g.degree(u) == 2 && g.has_edge(u, a) && g.has_edge(u, b))
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        make_family(&Family::Cycle(n)).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::Input(_))));
    }

    #[test]
    fn canonical_edge_order() {
        let g = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_index(3, 2), Some(2));
        assert_eq!(g.incident_edges(0), &[0, 1]);
    }

    #[test]
    fn essential_examples() {
        assert!(essential_vertices(&cycle(3)).is_empty());
        let p3 = make_family(&Family::Path(3)).unwrap();
        assert_eq!(essential_vertices(&p3), vec![1]);
        let w6 = make_family(&Family::Wheel(6)).unwrap();
        assert_eq!(essential_vertices(&w6), (0..6).collect::<Vec<_>>());
        let k2 = make_family(&Family::Path(2)).unwrap();
        assert_eq!(essential_vertices(&k2), vec![0, 1]);
    }

    #[test]
    fn factor_critical_examples() {
        assert!(is_factor_critical(&cycle(5)));
        assert!(!is_factor_critical(&cycle(4)));
        assert!(is_factor_critical(&make_family(&Family::ChortlingC5).unwrap()));
        assert!(is_factor_critical(&Graph::empty(1)));
        assert!(!is_factor_critical(&Graph::empty(0)));
        // a triangle with a pendant path of length two: 5 vertices, not factor-critical
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!is_factor_critical(&g));
    }

    #[test]
    fn line_graph_examples() {
        assert!(line_graph(&cycle(5)).is_isomorphic_small(&cycle(5)));
        let lp3 = line_graph(&make_family(&Family::Path(3)).unwrap());
        assert_eq!(lp3.vertex_count(), 2);
        assert_eq!(lp3.edges(), &[(0, 1)]);
        assert!(line_graph(&cycle(3)).is_isomorphic_small(&cycle(3)));
    }

    #[test]
    fn bipartite_witnesses() {
        assert!(is_bipartite(&cycle(6)).is_bipartite());
        assert!(is_bipartite(&Graph::empty(1)).is_bipartite());
        let w5 = make_family(&Family::Wheel(5)).unwrap();
        match is_bipartite(&w5) {
            Bipartition::OddCycle { cycle } => {
                assert_eq!(cycle.len() % 2, 1);
                for i in 0..cycle.len() {
                    assert!(w5.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(sorted.len(), cycle.len());
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn k11n_recognition() {
        let k112 = make_family(&Family::CompleteMultipartite(vec![1, 1, 2])).unwrap();
        assert!(is_k11n(&k112));
        assert!(is_k11n(&cycle(3)));
        assert!(!is_k11n(&make_family(&Family::Wheel(4)).unwrap()));
        let k113 = make_family(&Family::CompleteMultipartite(vec![1, 1, 3])).unwrap();
        assert!(is_k11n(&k113));
    }

    #[test]
    fn isomorphism_templates() {
        let k4 = make_family(&Family::CompleteMultipartite(vec![1, 1, 1, 1])).unwrap();
        assert!(k4.is_isomorphic_small(&make_family(&Family::Wheel(4)).unwrap()));
        let c5p = make_family(&Family::ChortlingC5).unwrap();
        let c5s = make_family(&Family::ChordedC5).unwrap();
        assert!(!c5p.is_isomorphic_small(&c5s));
        // relabelled chortling cycle
        let relabel = [3, 0, 4, 1, 2];
        let moved = Graph::new(5, c5p.edges().iter().map(|&(u, v)| (relabel[u], relabel[v]))).unwrap();
        assert!(moved.is_isomorphic_small(&c5p));
    }
}
