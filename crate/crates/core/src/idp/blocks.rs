//! Block-level sufficient conditions and the merge of per-block splits.

use super::{Diagnostics, SplitMethod, SplitResult};
use crate::error::{Error, Result};
use crate::graph::{blocks, is_bipartite, is_complete, is_k11n, Graph, Vertex};
use crate::polytope::{is_matching, EdgeWeighting};

/// Every block is bipartite, `K4` or `K_{1,1,n}`. A `true` answer proves
/// the IDP; `false` is inconclusive.
pub fn blocks_sufficient(g: &Graph) -> bool {
    blocks(g).blocks.iter().all(|b| {
        let (sub, _) = g.induced_subgraph(&b.vertices);
        is_template_block(&sub)
    })
}

pub(crate) fn is_template_block(b: &Graph) -> bool {
    is_bipartite(b).is_bipartite() || (b.vertex_count() == 4 && is_complete(b)) || is_k11n(b)
}

fn covered_vertices(g: &Graph, r: &SplitResult) -> Vec<Vertex> {
    let mut seen = vec![false; g.vertex_count()];
    for p in &r.parts {
        for e in p.support() {
            let (u, v) = g.edge(e);
            seen[u] = true;
            seen[v] = true;
        }
    }
    (0..g.vertex_count()).filter(|&u| seen[u]).collect()
}

fn covers(g: &Graph, part: &EdgeWeighting, u: Vertex) -> bool {
    g.incident_edges(u).iter().any(|&e| part.weights[e] > 0)
}

/// Merges splits of edge-disjoint pieces of `g` that meet only at cut
/// vertices. All inputs are indexed by the edges of `g` and have the same
/// number of parts `t`.
///
/// Pieces are attached one at a time, each meeting the attached ones in at
/// most one vertex `u`. The parts of the new piece that saturate `u` are
/// moved to indices whose merged part misses `u`; there are enough, since
/// the total weight at `u` is at most `t`.
pub fn combine_block_splits(g: &Graph, per_block: &[SplitResult]) -> Result<SplitResult> {
    let Some(first) = per_block.first() else {
        return Err(Error::input("no block splits to combine"));
    };
    let t = first.parts.len();
    if per_block
        .iter()
        .any(|r| r.parts.len() != t || r.parts.iter().any(|p| p.weights.len() != g.edge_count()))
    {
        return Err(Error::input("block splits differ in part count or edge count"));
    }
    if per_block.len() == 1 {
        return Ok(first.clone());
    }
    let vertex_sets: Vec<Vec<Vertex>> = per_block.iter().map(|r| covered_vertices(g, r)).collect();
    let mut placed_vertex = vec![false; g.vertex_count()];
    let mut done = vec![false; per_block.len()];
    let mut merged: Vec<EdgeWeighting> = vec![EdgeWeighting::zero(g.edge_count(), 1); t];
    let mut out = SplitResult::new(Vec::new(), SplitMethod::Blocks);
    let mut diagnostics = Diagnostics::default();
    for _ in 0..per_block.len() {
        let next = (0..per_block.len())
            .filter(|&i| !done[i])
            .find(|&i| vertex_sets[i].iter().any(|&u| placed_vertex[u]))
            .or_else(|| (0..per_block.len()).find(|&i| !done[i]))
            .expect("an unplaced block remains");
        done[next] = true;
        let block = &per_block[next];
        let shared: Vec<Vertex> = vertex_sets[next]
            .iter()
            .copied()
            .filter(|&u| placed_vertex[u])
            .collect();
        if shared.len() > 1 {
            return Err(Error::internal("blocks meet in more than one vertex"));
        }
        let mut perm: Vec<usize> = (0..t).collect();
        if let Some(&u) = shared.first() {
            let free: Vec<usize> = (0..t).filter(|&i| !covers(g, &merged[i], u)).collect();
            let busy: Vec<usize> = (0..t).filter(|&i| covers(g, &merged[i], u)).collect();
            let saturating: Vec<usize> = (0..t).filter(|&j| covers(g, &block.parts[j], u)).collect();
            let others: Vec<usize> = (0..t).filter(|&j| !covers(g, &block.parts[j], u)).collect();
            if saturating.len() > free.len() {
                return Err(Error::internal(format!("vertex {u} is saturated more than t times")));
            }
            let targets: Vec<usize> = free.iter().chain(&busy).copied().collect();
            for (j, &target) in saturating.iter().chain(&others).zip(&targets) {
                perm[*j] = target;
            }
        }
        for (j, part) in block.parts.iter().enumerate() {
            for (m, &w) in merged[perm[j]].weights.iter_mut().zip(&part.weights) {
                *m += w;
            }
        }
        for step in &block.trace {
            let mut step = step.clone();
            step.part = perm[step.part];
            // Part `i` is the one split off at level `t - i`.
            step.level = (t - step.part) as u32;
            out.trace.push(step);
        }
        out.fallback_used |= block.fallback_used;
        diagnostics.absorb(&block.diagnostics);
        for &u in &vertex_sets[next] {
            placed_vertex[u] = true;
        }
    }
    if merged
        .iter()
        .any(|p| p.weights.iter().any(|&w| w > 1) || !is_matching(g, &p.weights))
    {
        return Err(Error::internal("merged block parts are not matchings"));
    }
    out.trace.sort_by_key(|s| s.part);
    out.parts = merged;
    out.diagnostics = diagnostics;
    Ok(out)
}
