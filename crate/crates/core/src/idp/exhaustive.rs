//! Brute-force splitting and IDP certification.

use std::collections::HashSet;

use serde::Serialize;

use super::{default_split_budget, indicator, subtract, Rule, SplitMethod, SplitResult};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{EdgeIndex, Graph};
use crate::polytope::{EdgeWeighting, MatchingPolytope};

/// Enumerates the matchings `m <= x` that saturate every vertex of weight
/// `t`, in a fixed order: the edge covering the first unsaturated tight
/// vertex is chosen first, then the remaining edges by index with
/// inclusion tried before exclusion. Each such matching appears once.
struct Candidates<'a> {
    g: &'a Graph,
    x: &'a [u32],
    tight: Vec<usize>,
    covered: Vec<bool>,
    chosen: Vec<EdgeIndex>,
    meter: &'a Meter,
}

/// What the visitor asks the enumeration to do next.
enum Visit {
    Continue,
    Stop,
}

impl<'a> Candidates<'a> {
    fn new(g: &'a Graph, x: &'a [u32], t: u32, meter: &'a Meter) -> Self {
        let tight = (0..g.vertex_count())
            .filter(|&u| crate::polytope::vertex_weight(g, x, u) == t as u64)
            .collect();
        Candidates {
            g,
            x,
            tight,
            covered: vec![false; g.vertex_count()],
            chosen: Vec::new(),
            meter,
        }
    }

    fn usable(&self, e: EdgeIndex) -> bool {
        let (u, v) = self.g.edge(e);
        self.x[e] > 0 && !self.covered[u] && !self.covered[v]
    }

    fn take(&mut self, e: EdgeIndex, on: bool) {
        let (u, v) = self.g.edge(e);
        self.covered[u] = on;
        self.covered[v] = on;
        if on {
            self.chosen.push(e);
        } else {
            self.chosen.pop();
        }
    }

    /// Returns `Ok(true)` when the visitor stopped the enumeration.
    fn run(&mut self, visit: &mut dyn FnMut(&[EdgeIndex]) -> Visit) -> Result<bool> {
        self.cover_tight(0, visit)
    }

    fn cover_tight(&mut self, from: usize, visit: &mut dyn FnMut(&[EdgeIndex]) -> Visit) -> Result<bool> {
        let Some(i) = (from..self.tight.len()).find(|&i| !self.covered[self.tight[i]]) else {
            return self.add_free(0, visit);
        };
        let u = self.tight[i];
        for k in 0..self.g.incident_edges(u).len() {
            let e = self.g.incident_edges(u)[k];
            if self.usable(e) {
                self.take(e, true);
                let stop = self.cover_tight(i + 1, visit)?;
                self.take(e, false);
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn add_free(&mut self, e: EdgeIndex, visit: &mut dyn FnMut(&[EdgeIndex]) -> Visit) -> Result<bool> {
        if e == self.g.edge_count() {
            if !self.meter.tick(1) {
                return Err(self.meter.exceeded());
            }
            return Ok(matches!(visit(&self.chosen), Visit::Stop));
        }
        if self.usable(e) {
            self.take(e, true);
            let stop = self.add_free(e + 1, visit)?;
            self.take(e, false);
            if stop {
                return Ok(true);
            }
        }
        self.add_free(e + 1, visit)
    }
}

/// The first matching `m` in canonical order with `x - m` a (t-1)-matching.
pub(crate) fn find_peel(p: &MatchingPolytope, x: &[u32], t: u32, meter: &Meter) -> Result<Option<Vec<EdgeIndex>>> {
    let mut found = None;
    Candidates::new(p.graph(), x, t, meter).run(&mut |m| {
        if p.admits(&subtract(x, m), t - 1) {
            found = Some(m.to_vec());
            Visit::Stop
        } else {
            Visit::Continue
        }
    })?;
    Ok(found)
}

/// Full decomposition by depth-first search, remembering the remainders
/// already known not to decompose. Parts are listed from level `t` down.
pub(crate) fn decompose(
    p: &MatchingPolytope,
    x: &[u32],
    t: u32,
    meter: &Meter,
    failed: &mut HashSet<(u32, Vec<u32>)>,
) -> Result<Option<Vec<Vec<EdgeIndex>>>> {
    if t == 0 {
        return Ok(x.iter().all(|&w| w == 0).then(Vec::new));
    }
    if t == 1 {
        return Ok(crate::polytope::is_matching(p.graph(), x).then(|| vec![support(x)]));
    }
    if failed.contains(&(t, x.to_vec())) {
        return Ok(None);
    }
    let mut result = None;
    let mut error = None;
    Candidates::new(p.graph(), x, t, meter).run(&mut |m| {
        let y = subtract(x, m);
        if !p.admits(&y, t - 1) {
            return Visit::Continue;
        }
        match decompose(p, &y, t - 1, meter, failed) {
            Ok(Some(mut rest)) => {
                rest.insert(0, m.to_vec());
                result = Some(rest);
                Visit::Stop
            }
            Ok(None) => Visit::Continue,
            Err(e) => {
                error = Some(e);
                Visit::Stop
            }
        }
    })?;
    if let Some(e) = error {
        return Err(e);
    }
    if result.is_none() {
        failed.insert((t, x.to_vec()));
    }
    Ok(result)
}

fn support(x: &[u32]) -> Vec<EdgeIndex> {
    (0..x.len()).filter(|&e| x[e] > 0).collect()
}

/// Packs parts found by search into a result whose trace labels every
/// part with `rule`.
pub(crate) fn search_result(
    edge_count: usize,
    t: u32,
    parts: Vec<Vec<EdgeIndex>>,
    method: SplitMethod,
    rule: Rule,
) -> SplitResult {
    let mut r = SplitResult::new(Vec::new(), method);
    for (i, m) in parts.into_iter().enumerate().rev() {
        r = r.prepend(indicator(edge_count, &m), t - i as u32, vec![(rule, m)]);
    }
    r
}

pub fn split_exhaustive(g: &Graph, x: &EdgeWeighting, t: u32) -> Result<Option<SplitResult>> {
    split_exhaustive_with(g, x, t, &default_split_budget())
}

/// Decomposes `x` into `t` matchings by search. `Ok(None)` means the
/// search space was exhausted: `x` is not a sum of `t` matchings.
pub fn split_exhaustive_with(g: &Graph, x: &EdgeWeighting, t: u32, budget: &Budget) -> Result<Option<SplitResult>> {
    let p = MatchingPolytope::new(g)?;
    if !p.is_t_matching(&x.weights, t)? {
        return Err(Error::input(format!("weighting is not a {t}-matching")));
    }
    let meter = budget.start("exhaustive split");
    let parts = decompose(&p, &x.weights, t, &meter, &mut HashSet::new())?;
    Ok(parts.map(|parts| search_result(g.edge_count(), t, parts, SplitMethod::Exhaustive, Rule::Exhaustive)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelCount {
    pub t: u32,
    /// Number of t-matchings checked at this level.
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdpReport {
    /// No counterexample exists for `2 <= t <= t_max`.
    pub certified: bool,
    pub t_max: u32,
    pub levels: Vec<LevelCount>,
    /// The first t-matching, in enumeration order, that does not split.
    pub counterexample: Option<EdgeWeighting>,
}

/// `min(|E| - 1, 4)`, and at least 2.
pub fn default_t_max(g: &Graph) -> u32 {
    (g.edge_count().saturating_sub(1).min(4) as u32).max(2)
}

pub fn idp_check(g: &Graph, t_max: u32) -> Result<IdpReport> {
    idp_check_with(g, t_max, &Budget::unlimited())
}

/// Checks that every t-matching splits for `t = 2..=t_max`. By induction
/// on `t` this certifies that every such t-matching is a sum of `t`
/// matchings. The budget bounds both the enumeration and the searches.
pub fn idp_check_with(g: &Graph, t_max: u32, budget: &Budget) -> Result<IdpReport> {
    if t_max < 2 {
        return Err(Error::input("t_max must be at least 2"));
    }
    let p = MatchingPolytope::new(g)?;
    let meter = budget.start("IDP check");
    let mut levels = Vec::new();
    for t in 2..=t_max {
        let points = p.enumerate(t, budget)?;
        levels.push(LevelCount {
            t,
            count: points.len() as u64,
        });
        let splits = check_all(&p, &points, t, &meter)?;
        if let Some(i) = splits.iter().position(|&ok| !ok) {
            return Ok(IdpReport {
                certified: false,
                t_max,
                levels,
                counterexample: Some(points[i].clone()),
            });
        }
    }
    Ok(IdpReport {
        certified: true,
        t_max,
        levels,
        counterexample: None,
    })
}

#[cfg(feature = "parallel")]
fn check_all(p: &MatchingPolytope, points: &[EdgeWeighting], t: u32, meter: &Meter) -> Result<Vec<bool>> {
    use rayon::prelude::*;
    points
        .par_iter()
        .map(|x| find_peel(p, &x.weights, t, meter).map(|m| m.is_some()))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn check_all(p: &MatchingPolytope, points: &[EdgeWeighting], t: u32, meter: &Meter) -> Result<Vec<bool>> {
    points
        .iter()
        .map(|x| find_peel(p, &x.weights, t, meter).map(|m| m.is_some()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};
    use crate::idp::verify_decomposition;

    fn fam(f: Family) -> Graph {
        make_family(&f).unwrap()
    }

    #[test]
    fn sum_of_two_matchings_splits() {
        let c6 = fam(Family::Cycle(6));
        let x = EdgeWeighting::new(vec![1; 6], 2);
        let r = split_exhaustive(&c6, &x, 2).unwrap().unwrap();
        assert!(verify_decomposition(&c6, &x.weights, 2, &r.parts));
        assert_eq!(r.method, SplitMethod::Exhaustive);
    }

    #[test]
    fn triangle_all_ones_is_rejected_at_level_two() {
        let k3 = fam(Family::Cycle(3));
        let x = EdgeWeighting::new(vec![1; 3], 2);
        assert!(matches!(split_exhaustive(&k3, &x, 2), Err(Error::Input(_))));
    }

    #[test]
    fn candidates_saturate_tight_vertices_once_each() {
        let g = fam(Family::Path(4));
        let x = [2u32, 0, 1];
        let meter = Budget::unlimited().start("test");
        let mut seen = Vec::new();
        Candidates::new(&g, &x, 2, &meter)
            .run(&mut |m| {
                seen.push(m.to_vec());
                Visit::Continue
            })
            .unwrap();
        // Vertices 0 and 1 are tight and edge 0 saturates both.
        assert_eq!(seen, vec![vec![0, 2], vec![0]]);
    }

    #[test]
    fn idp_small_certificates() {
        for f in [Family::Cycle(5), Family::ChortlingC5, Family::Cycle(4)] {
            let r = idp_check(&fam(f), 3).unwrap();
            assert!(r.certified);
            assert_eq!(r.levels.len(), 2);
        }
        assert!(matches!(idp_check(&fam(Family::Cycle(5)), 1), Err(Error::Input(_))));
    }

    #[test]
    fn default_bound() {
        assert_eq!(default_t_max(&fam(Family::Path(2))), 2);
        assert_eq!(default_t_max(&fam(Family::Cycle(4))), 3);
        assert_eq!(default_t_max(&fam(Family::Wheel(5))), 4);
    }
}
