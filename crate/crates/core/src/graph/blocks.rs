//! Biconnected components (blocks) and cut vertices.

use serde::Serialize;

use super::{EdgeIndex, Graph, Vertex};

/// A maximal 2-connected subgraph, or a bridge, of the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Sorted host vertices.
    pub vertices: Vec<Vertex>,
    /// Sorted host edge indices.
    pub edges: Vec<EdgeIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Blocks ordered by their smallest edge index. Isolated vertices do not
    /// form blocks.
    pub blocks: Vec<Block>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<Vertex>,
}

/// Tarjan's algorithm on an explicit stack, so deep graphs do not overflow.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<EdgeIndex> = Vec::new();
    let mut out: Vec<Block> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, edge used to enter it, next incidence position)
        let mut stack: Vec<(Vertex, EdgeIndex, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, via, ref mut pos)) = stack.last_mut() {
            let inc = g.incident_edges(u);
            if *pos < inc.len() {
                let e = inc[*pos];
                *pos += 1;
                if e == via {
                    continue;
                }
                let (a, b) = g.edge(e);
                let w = if a == u { b } else { a };
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push(e);
                    stack.push((w, e, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push(e);
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        if p == root {
                            root_children += 1;
                        } else {
                            is_cut[p] = true;
                        }
                        let mut edges = Vec::new();
                        while let Some(f) = edge_stack.pop() {
                            edges.push(f);
                            if f == via {
                                break;
                            }
                        }
                        out.push(make_block(g, edges));
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    out.sort_by_key(|b| b.edges[0]);
    BlockDecomposition {
        blocks: out,
        cut_vertices: (0..n).filter(|&u| is_cut[u]).collect(),
    }
}

fn make_block(g: &Graph, mut edges: Vec<EdgeIndex>) -> Block {
    edges.sort_unstable();
    let mut vertices: Vec<Vertex> = edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.edge(e);
            [u, v]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    Block { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    #[test]
    fn wheel_is_one_block() {
        let w5 = make_family(&Family::Wheel(5)).unwrap();
        let d = blocks(&w5);
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cut_vertices.is_empty());
        assert_eq!(d.blocks[0].edges.len(), 8);
    }

    #[test]
    fn bowtie_and_path() {
        // two triangles sharing vertex 2
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = blocks(&g);
        assert_eq!(d.cut_vertices, vec![2]);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].vertices, vec![0, 1, 2]);
        assert_eq!(d.blocks[1].vertices, vec![2, 3, 4]);

        let p4 = make_family(&Family::Path(4)).unwrap();
        let d = blocks(&p4);
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g = Graph::new(
            9,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (7, 8)],
        )
        .unwrap();
        let d = blocks(&g);
        let mut all: Vec<EdgeIndex> = d.blocks.iter().flat_map(|b| b.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.edge_count()).collect::<Vec<_>>());
        assert_eq!(d.cut_vertices, vec![2, 3, 5]);
        assert_eq!(d.blocks.len(), 5);
    }
}
