//! One-level splitters for `C*5` and the chortling cycle `C'5`.
//!
//! Both work in the fixed labelling of [`Family::ChordedC5`] and
//! [`Family::ChortlingC5`]: the 5-cycle `0-1-2-3-4-0` with top vertex 0,
//! shoulders 1 (left) and 4 (right), and feet 2 (left) and 3 (right).

use super::exhaustive::find_peel;
use super::{
    check_verified, default_split_budget, dispatch, indicator, subtract, trivial_split, Rule, SplitMethod, SplitResult,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{make_family, EdgeIndex, Family, Graph, Vertex};
use crate::polytope::{structure_index, vertex_weight, EdgeWeighting, MatchingPolytope};

type Chooser = fn(&Graph, &[u32], u32) -> (Rule, Vec<EdgeIndex>);

fn edge(g: &Graph, u: Vertex, v: Vertex) -> EdgeIndex {
    g.edge_index(u, v).expect("template edge")
}

fn tight(g: &Graph, x: &[u32], t: u32, u: Vertex) -> bool {
    vertex_weight(g, x, u) == t as u64
}

/// Both shoulders tight: `{a, a'}`, which misses only the top, unless the
/// top triangle is tight too; then the chord and `c`. Otherwise a loose
/// shoulder lets `{b, c}` (or its mirror `{b', c}`) skip it.
fn choose_c5_star(g: &Graph, x: &[u32], t: u32) -> (Rule, Vec<EdgeIndex>) {
    let (a, a_mirror, c) = (edge(g, 1, 2), edge(g, 3, 4), edge(g, 2, 3));
    let (b, b_mirror, chord) = (edge(g, 0, 4), edge(g, 0, 1), edge(g, 1, 4));
    let (left, right) = (tight(g, x, t, 1), tight(g, x, t, 4));
    if left && right && structure_index(x, t, 3, &[b, b_mirror, chord]) > 0 {
        (Rule::ShouldersAndTopTight, vec![chord, c])
    } else if left && right {
        (Rule::ShouldersTight, vec![a, a_mirror])
    } else if !left {
        (Rule::ShoulderLoose, vec![b, c])
    } else {
        (Rule::ShoulderLoose, vec![b_mirror, c])
    }
}

/// The reflection of `C'5` fixing the top.
const MIRROR: [Vertex; 5] = [0, 4, 3, 2, 1];

/// Top tight: at most one foot is tight, so after an optional reflection
/// the right foot is loose. Then `{a, a'}` if the right triangle is loose,
/// else `{b, b'}`, which needs the left triangle loose. Top loose: `{b, c}`.
fn choose_chortling(g: &Graph, x: &[u32], t: u32) -> (Rule, Vec<EdgeIndex>) {
    if !tight(g, x, t, 0) {
        return (Rule::TopLoose, vec![edge(g, 2, 4), edge(g, 1, 3)]);
    }
    let frame: [Vertex; 5] = if tight(g, x, t, 3) { MIRROR } else { [0, 1, 2, 3, 4] };
    let e = |u: Vertex, v: Vertex| edge(g, frame[u], frame[v]);
    let right_triangle = [e(2, 3), e(3, 4), e(2, 4)];
    if structure_index(x, t, 3, &right_triangle) <= 0 {
        (Rule::TopTight, vec![e(1, 2), e(0, 4)])
    } else {
        (Rule::TopTight, vec![e(2, 4), e(0, 1)])
    }
}

pub fn split_c5_star(x: &EdgeWeighting, t: u32) -> Result<SplitResult> {
    split_c5_star_with(x, t, &default_split_budget())
}

/// Splits a nondegenerate t-matching of `C*5` one level by the shoulder
/// case analysis, then decomposes the remainder with [`dispatch`].
pub fn split_c5_star_with(x: &EdgeWeighting, t: u32, budget: &Budget) -> Result<SplitResult> {
    let g = make_family(&Family::ChordedC5)?;
    split_template(&g, &x.weights, t, budget, SplitMethod::C5Star, choose_c5_star)
}

pub fn split_c5_chortling(x: &EdgeWeighting, t: u32) -> Result<SplitResult> {
    split_c5_chortling_with(x, t, &default_split_budget())
}

/// Splits a nondegenerate t-matching of `C'5` one level by the top-vertex
/// case analysis, then decomposes the remainder with [`dispatch`].
pub fn split_c5_chortling_with(x: &EdgeWeighting, t: u32, budget: &Budget) -> Result<SplitResult> {
    let g = make_family(&Family::ChortlingC5)?;
    split_template(&g, &x.weights, t, budget, SplitMethod::C5Chortling, choose_chortling)
}

fn split_template(
    g: &Graph,
    x: &[u32],
    t: u32,
    budget: &Budget,
    method: SplitMethod,
    choose: Chooser,
) -> Result<SplitResult> {
    let p = MatchingPolytope::new(g)?;
    if !p.is_t_matching(x, t)? {
        return Err(Error::input(format!("weighting is not a {t}-matching")));
    }
    if x.contains(&0) {
        return Err(Error::input("weighting is degenerate; restrict to its support first"));
    }
    if let Some(r) = trivial_split(g, x, t, method) {
        return Ok(r);
    }
    let (mut rule, mut m) = choose(g, x, t);
    let mut fallback = false;
    if !p.admits(&subtract(x, &m), t - 1) {
        let meter = budget.start("split fallback search");
        m = find_peel(&p, x, t, &meter)?
            .ok_or_else(|| Error::internal(format!("no matching splits this {t}-matching")))?;
        rule = Rule::Fallback;
        fallback = true;
    }
    let y = subtract(x, &m);
    let rest = dispatch::split_inner(g, &y, t - 1, budget)?
        .ok_or_else(|| Error::internal(format!("remainder of a {t}-matching does not decompose")))?;
    let mut r = rest.prepend(indicator(g.edge_count(), &m), t, vec![(rule, m)]);
    r.method = method;
    r.fallback_used |= fallback;
    check_verified(g, x, t, &r)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idp::verify_decomposition;

    fn nondegenerate(g: &Graph, t: u32) -> Vec<Vec<u32>> {
        MatchingPolytope::new(g)
            .unwrap()
            .enumerate(t, &Budget::unlimited())
            .unwrap()
            .into_iter()
            .map(|x| x.weights)
            .filter(|w| w.iter().all(|&v| v > 0))
            .collect()
    }

    #[test]
    fn c5_star_shoulder_cases() {
        let g = make_family(&Family::ChordedC5).unwrap();
        // The only nondegenerate 3-matching is all ones: both shoulders
        // and the top triangle are tight, and `{a, a'}` misses the triangle.
        let ones = nondegenerate(&g, 3);
        assert_eq!(ones, vec![vec![1; 6]]);
        let p = MatchingPolytope::new(&g).unwrap();
        assert!(!p.admits(&subtract(&ones[0], &[edge(&g, 1, 2), edge(&g, 3, 4)]), 2));
        let r = split_c5_star(&EdgeWeighting::new(ones[0].clone(), 3), 3).unwrap();
        assert!(!r.fallback_used);
        assert_eq!(r.trace[0].rule, Rule::ShouldersAndTopTight);

        let both = nondegenerate(&g, 4)
            .into_iter()
            .find(|x| tight(&g, x, 4, 1) && tight(&g, x, 4, 4) && choose_c5_star(&g, x, 4).0 == Rule::ShouldersTight)
            .expect("a 4-matching with both shoulders tight and the top triangle loose");
        let r = split_c5_star(&EdgeWeighting::new(both.clone(), 4), 4).unwrap();
        assert!(!r.fallback_used);
        assert_eq!(r.trace[0].rule, Rule::ShouldersTight);
        assert!(verify_decomposition(&g, &both, 4, &r.parts));

        assert!(nondegenerate(&g, 2).is_empty());
        let loose = nondegenerate(&g, 4)
            .into_iter()
            .find(|x| !tight(&g, x, 4, 1))
            .expect("a 4-matching with the left shoulder loose");
        let (rule, m) = choose_c5_star(&g, &loose, 4);
        assert_eq!((rule, m), (Rule::ShoulderLoose, vec![edge(&g, 0, 4), edge(&g, 2, 3)]));
        let r = split_c5_star(&EdgeWeighting::new(loose.clone(), 4), 4).unwrap();
        assert!(!r.fallback_used);
        assert!(verify_decomposition(&g, &loose, 4, &r.parts));
    }

    #[test]
    fn chortling_cases() {
        let g = make_family(&Family::ChortlingC5).unwrap();
        let right = [edge(&g, 2, 3), edge(&g, 3, 4), edge(&g, 2, 4)];
        // Nondegenerate t-matchings of C'5 start at t = 4.
        assert!(nondegenerate(&g, 3).is_empty());
        let top_tight = nondegenerate(&g, 5)
            .into_iter()
            .find(|x| tight(&g, x, 5, 0) && !tight(&g, x, 5, 3) && structure_index(x, 5, 3, &right) <= 0)
            .expect("top tight, right foot and right triangle loose");
        assert_eq!(
            choose_chortling(&g, &top_tight, 5).1,
            vec![edge(&g, 1, 2), edge(&g, 0, 4)]
        );
        let r = split_c5_chortling(&EdgeWeighting::new(top_tight.clone(), 5), 5).unwrap();
        assert!(!r.fallback_used);
        assert!(verify_decomposition(&g, &top_tight, 5, &r.parts));

        let top_loose = nondegenerate(&g, 4)
            .into_iter()
            .find(|x| !tight(&g, x, 4, 0))
            .expect("top loose");
        assert_eq!(choose_chortling(&g, &top_loose, 4).0, Rule::TopLoose);
        let r = split_c5_chortling(&EdgeWeighting::new(top_loose.clone(), 4), 4).unwrap();
        assert!(!r.fallback_used);
        assert!(verify_decomposition(&g, &top_loose, 4, &r.parts));
    }

    #[test]
    fn case_analyses_never_fall_back_up_to_level_six() {
        for (family, choose) in [
            (Family::ChordedC5, choose_c5_star as Chooser),
            (Family::ChortlingC5, choose_chortling as Chooser),
        ] {
            let g = make_family(&family).unwrap();
            let p = MatchingPolytope::new(&g).unwrap();
            for t in 2..=6 {
                for x in nondegenerate(&g, t) {
                    let (_, m) = choose(&g, &x, t);
                    assert!(p.admits(&subtract(&x, &m), t - 1), "{family} {x:?} at t = {t}");
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        let x = EdgeWeighting::new(vec![1, 0, 1, 0, 1, 0], 2);
        assert!(matches!(split_c5_star(&x, 2), Err(Error::Input(_))));
    }
}
