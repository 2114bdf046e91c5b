//! Routing a t-matching to the best splitter for each block of its support.

use std::collections::HashSet;

use super::blocks::is_template_block;
use super::exhaustive::{decompose, search_result};
use super::{
    check_verified, combine_block_splits, default_split_budget, indicator, split_c5_chortling_with, split_c5_star_with,
    wheel_split_with, Rule, SplitMethod, SplitResult,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{blocks, make_family, EdgeIndex, Family, Graph};
use crate::polytope::{support_graph, EdgeWeighting, MatchingPolytope};
use crate::structures::WheelFrame;

pub fn split_any(g: &Graph, x: &EdgeWeighting, t: u32) -> Result<Option<SplitResult>> {
    split_any_with(g, x, t, &default_split_budget())
}

/// Decomposes a t-matching into `t` matchings. Each block of the support is
/// split on its own: bridges directly, `C*5` and `C'5` by their case
/// analyses, wheel subgraphs by the wheel construction, and everything else
/// by search. `Ok(None)` means search proved that `x` is not a sum of `t`
/// matchings.
pub fn split_any_with(g: &Graph, x: &EdgeWeighting, t: u32, budget: &Budget) -> Result<Option<SplitResult>> {
    if x.weights.len() != g.edge_count() {
        return Err(Error::input("weighting length does not match the edge count"));
    }
    if !MatchingPolytope::new(g)?.is_t_matching(&x.weights, t)? {
        return Err(Error::input(format!("weighting is not a {t}-matching")));
    }
    split_inner(g, &x.weights, t, budget)
}

/// [`split_any_with`] for a weighting already known to be a t-matching.
pub(crate) fn split_inner(g: &Graph, x: &[u32], t: u32, budget: &Budget) -> Result<Option<SplitResult>> {
    if x.iter().all(|&w| w == 0) {
        let parts = vec![EdgeWeighting::zero(g.edge_count(), 1); t as usize];
        return Ok(Some(SplitResult::new(parts, SplitMethod::Exhaustive)));
    }
    let (support, support_map) = support_graph(g, x);
    let wheel_host = WheelFrame::new(g.vertex_count()).is_ok_and(|f| f.contains(&support));
    let decomposition = blocks(&support);
    let mut per_block = Vec::with_capacity(decomposition.blocks.len());
    for block in &decomposition.blocks {
        let (local, local_map) = support.induced_subgraph(&block.vertices);
        let to_host: Vec<EdgeIndex> = local_map.iter().map(|&e| support_map[e]).collect();
        let local_x: Vec<u32> = to_host.iter().map(|&e| x[e]).collect();
        let contains_center = block.vertices.contains(&(g.vertex_count().wrapping_sub(1)));
        let r = if local.edge_count() == 1 {
            Some(bridge(g.edge_count(), to_host[0], x[to_host[0]], t))
        } else if let Some(r) = split_c5_block(&local, &local_x, t, budget, &to_host, g.edge_count())? {
            Some(r)
        } else if is_template_block(&local) {
            search_block(&local, &local_x, t, budget, SplitMethod::PerfectBlock)?
                .map(|r| r.remap(&to_host, g.edge_count()))
        } else if wheel_host && contains_center {
            let host_edges: Vec<EdgeIndex> = block.edges.iter().map(|&e| support_map[e]).collect();
            let (h, h_map) = g.edge_subgraph(&host_edges);
            let h_x = EdgeWeighting::new(h_map.iter().map(|&e| x[e]).collect(), t);
            Some(wheel_split_with(&h, &h_x, t, budget)?.remap(&h_map, g.edge_count()))
        } else {
            search_block(&local, &local_x, t, budget, SplitMethod::Exhaustive)?
                .map(|r| r.remap(&to_host, g.edge_count()))
        };
        match r {
            Some(r) => per_block.push(r),
            None => return Ok(None),
        }
    }
    let r = combine_block_splits(g, &per_block)?;
    check_verified(g, x, t, &r)?;
    Ok(Some(r))
}

/// A bridge of weight `w` goes into the first `w` parts.
fn bridge(edge_count: usize, e: EdgeIndex, w: u32, t: u32) -> SplitResult {
    let mut r = SplitResult::new(Vec::new(), SplitMethod::PerfectBlock);
    for level in 1..=t {
        let m: Vec<EdgeIndex> = if level <= w { vec![e] } else { Vec::new() };
        r = r.prepend(indicator(edge_count, &m), level, vec![(Rule::Bridge, m)]);
    }
    r
}

fn search_block(g: &Graph, x: &[u32], t: u32, budget: &Budget, method: SplitMethod) -> Result<Option<SplitResult>> {
    let p = MatchingPolytope::new(g)?;
    let meter = budget.start("block split search");
    let parts = decompose(&p, x, t, &meter, &mut HashSet::new())?;
    Ok(parts.map(|parts| search_result(g.edge_count(), t, parts, method, Rule::Exhaustive)))
}

/// Splits a block isomorphic to `C*5` or `C'5` in the template labelling
/// and moves the result to the host edges.
fn split_c5_block(
    local: &Graph,
    x: &[u32],
    t: u32,
    budget: &Budget,
    to_host: &[EdgeIndex],
    host_edge_count: usize,
) -> Result<Option<SplitResult>> {
    if local.vertex_count() != 5 {
        return Ok(None);
    }
    for family in [Family::ChordedC5, Family::ChortlingC5] {
        let template = make_family(&family)?;
        let Some(image) = local.isomorphism_small(&template) else {
            continue;
        };
        let mut template_x = vec![0; template.edge_count()];
        let mut template_to_host = vec![0; template.edge_count()];
        for (e, &(u, v)) in local.edges().iter().enumerate() {
            let k = template
                .edge_index(image[u], image[v])
                .expect("isomorphism maps edges to edges");
            template_x[k] = x[e];
            template_to_host[k] = to_host[e];
        }
        let weighting = EdgeWeighting::new(template_x, t);
        let r = match family {
            Family::ChordedC5 => split_c5_star_with(&weighting, t, budget)?,
            _ => split_c5_chortling_with(&weighting, t, budget)?,
        };
        return Ok(Some(r.remap(&template_to_host, host_edge_count)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idp::verify_decomposition;

    fn fam(f: Family) -> Graph {
        make_family(&f).unwrap()
    }

    #[test]
    fn zero_weighting_gives_empty_parts() {
        let g = fam(Family::Cycle(5));
        let r = split_any(&g, &EdgeWeighting::zero(5, 3), 3).unwrap().unwrap();
        assert_eq!(r.parts.len(), 3);
        assert!(verify_decomposition(&g, &[0; 5], 3, &r.parts));
    }

    #[test]
    fn routes_by_block_type() {
        let w5 = fam(Family::Wheel(5));
        let x = EdgeWeighting::new(vec![1; w5.edge_count()], 4);
        let r = split_any(&w5, &x, 4).unwrap().unwrap();
        assert_eq!(r.method, SplitMethod::Wheel);
        assert!(verify_decomposition(&w5, &x.weights, 4, &r.parts));

        let c5 = fam(Family::ChortlingC5);
        let x = EdgeWeighting::new(vec![1; c5.edge_count()], 4);
        let r = split_any(&c5, &x, 4).unwrap().unwrap();
        assert_eq!(r.method, SplitMethod::C5Chortling);

        let path = fam(Family::Path(4));
        let x = EdgeWeighting::new(vec![2, 1, 2], 3);
        let r = split_any(&path, &x, 3).unwrap().unwrap();
        assert_eq!(r.method, SplitMethod::Blocks);
        assert!(r.trace.iter().all(|s| s.rule == Rule::Bridge));
        assert!(verify_decomposition(&path, &x.weights, 3, &r.parts));
    }

    #[test]
    fn relabelled_template_is_recognised() {
        // C*5 with its vertices reversed.
        let g = Graph::new(5, [(4, 3), (3, 2), (2, 1), (1, 0), (0, 4), (3, 0)]).unwrap();
        let x = EdgeWeighting::new(vec![1; 6], 3);
        let r = split_any(&g, &x, 3).unwrap().unwrap();
        assert_eq!(r.method, SplitMethod::C5Star);
        assert!(verify_decomposition(&g, &x.weights, 3, &r.parts));
    }

    #[test]
    fn rejects_non_t_matching() {
        let g = fam(Family::Cycle(3));
        assert!(matches!(
            split_any(&g, &EdgeWeighting::new(vec![1; 3], 2), 2),
            Err(Error::Input(_))
        ));
    }
}
