//! The integer decomposition property and constructive splitting.
//!
//! A t-matching `x` *splits* when `x = m + y` with `m` a matching and `y`
//! a (t-1)-matching. Splitting at every level yields `x` as a sum of `t`
//! matchings. Every splitter here constructs `m`, checks `x - m` against
//! the full inequality description, and falls back to exhaustive search
//! when the construction does not verify.

mod blocks;
mod c5;
mod dispatch;
mod exhaustive;
mod wheel;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{EdgeIndex, Graph};
use crate::polytope::{is_matching, EdgeWeighting};

pub use blocks::{blocks_sufficient, combine_block_splits};
pub use c5::{split_c5_chortling, split_c5_chortling_with, split_c5_star, split_c5_star_with};
pub use dispatch::{split_any, split_any_with};
pub use exhaustive::{default_t_max, idp_check, idp_check_with, split_exhaustive, split_exhaustive_with, IdpReport};
pub use wheel::{reduce_tight_structures, wheel_split, wheel_split_with, Gap, GapKind, TroubleSlice, TroublesomeSet};

/// Node budget for the searches behind one split.
pub const DEFAULT_SPLIT_NODES: u64 = 1 << 26;

pub fn default_split_budget() -> Budget {
    Budget::nodes(DEFAULT_SPLIT_NODES)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMethod {
    Exhaustive,
    Blocks,
    C5Star,
    C5Chortling,
    Wheel,
    /// A block that is bipartite, `K4` or `K_{1,1,n}`, split by search.
    PerfectBlock,
}

/// Why an edge was put into a part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Found by exhaustive search as the primary method.
    Exhaustive,
    /// Found by exhaustive search after a construction failed to verify.
    Fallback,
    /// The last part: what is left at level 1 is already a matching.
    Remainder,
    /// A bridge of weight `w` goes into `w` distinct parts.
    Bridge,
    /// `C*5` with both shoulders tight: `{a, a'}`.
    ShouldersTight,
    /// `C*5` with both shoulders and the top triangle tight: the chord and `c`.
    ShouldersAndTopTight,
    /// `C*5` with a loose shoulder: `{b, c}` or its mirror.
    ShoulderLoose,
    /// `C'5` with the top tight: `{a, a'}` or `{b, b'}` by the loose triangle.
    TopTight,
    /// `C'5` with the top loose: `{b, c}`.
    TopLoose,
    /// Two full-index troublesome slices joined through a (pseudo)conductor.
    JoinedSlices,
    /// Alternating edges inside a troublesome slice.
    SlicePattern,
    /// Alternating edges through a conductor.
    Conductor,
    /// Edges along an insulator.
    Insulator,
    /// The spoke chosen for the centre.
    Spoke,
    /// A tight rim vertex next to a missing rim edge, treated as a triangle.
    MissingEdgeTriangle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Index of the part the edges went into.
    pub part: usize,
    /// Level `t` at which the part was split off.
    pub level: u32,
    pub rule: Rule,
    pub edges: Vec<EdgeIndex>,
}

/// Counters collected while running the wheel construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// Levels split by the wheel construction, fallbacks included.
    pub wheel_levels: u64,
    /// Levels where the construction failed and search took over.
    pub wheel_fallbacks: u64,
    /// Instances with two full-index slices joined by a (pseudo)conductor.
    pub joined_full_slices: u64,
    /// Detected instances contradicting the shape the joined-slices construction relies
    /// on: more than three troublesome slices, or a full-index third one.
    pub joined_structure_violations: u64,
    /// Interlocking or nested reductions performed.
    pub interlocking_reductions: u64,
    /// Reductions where `I(S) <= I(S') + I(R)` failed for either slice.
    pub interlocking_bound_violations: u64,
    /// Slices split at a tight interior rim vertex.
    pub interior_splits: u64,
}

impl Diagnostics {
    fn absorb(&mut self, other: &Diagnostics) {
        self.wheel_levels += other.wheel_levels;
        self.wheel_fallbacks += other.wheel_fallbacks;
        self.joined_full_slices += other.joined_full_slices;
        self.joined_structure_violations += other.joined_structure_violations;
        self.interlocking_reductions += other.interlocking_reductions;
        self.interlocking_bound_violations += other.interlocking_bound_violations;
        self.interior_splits += other.interior_splits;
    }
}

/// `x` written as a sum of `t` matchings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    /// Exactly `t` indicator vectors of matchings, summing to the input.
    pub parts: Vec<EdgeWeighting>,
    pub method: SplitMethod,
    pub fallback_used: bool,
    pub trace: Vec<TraceStep>,
    pub diagnostics: Diagnostics,
}

impl SplitResult {
    fn new(parts: Vec<EdgeWeighting>, method: SplitMethod) -> Self {
        SplitResult {
            parts,
            method,
            fallback_used: false,
            trace: Vec::new(),
            diagnostics: Diagnostics::default(),
        }
    }

    /// Edge sets of the parts.
    pub fn part_edges(&self) -> Vec<Vec<EdgeIndex>> {
        self.parts.iter().map(EdgeWeighting::support).collect()
    }

    /// Moves every index through `map` into a graph with `edge_count` edges.
    fn remap(mut self, map: &[EdgeIndex], edge_count: usize) -> Self {
        for part in &mut self.parts {
            let mut w = vec![0; edge_count];
            for (local, &host) in map.iter().enumerate() {
                w[host] = part.weights[local];
            }
            part.weights = w;
        }
        for step in &mut self.trace {
            for e in &mut step.edges {
                *e = map[*e];
            }
        }
        self
    }

    /// Prepends the part `m` split off at level `level`.
    fn prepend(mut self, m: EdgeWeighting, level: u32, steps: Vec<(Rule, Vec<EdgeIndex>)>) -> Self {
        self.parts.insert(0, m);
        for step in &mut self.trace {
            step.part += 1;
        }
        let mut trace: Vec<TraceStep> = steps
            .into_iter()
            .filter(|(_, edges)| !edges.is_empty())
            .map(|(rule, edges)| TraceStep {
                part: 0,
                level,
                rule,
                edges,
            })
            .collect();
        trace.append(&mut self.trace);
        self.trace = trace;
        self
    }
}

/// `parts` has `t` members, each a matching of `g`, summing to `x`.
pub fn verify_decomposition(g: &Graph, x: &[u32], t: u32, parts: &[EdgeWeighting]) -> bool {
    if parts.len() != t as usize || x.len() != g.edge_count() {
        return false;
    }
    let mut sum = vec![0u32; x.len()];
    for p in parts {
        if p.weights.len() != x.len() || p.weights.iter().any(|&w| w > 1) || !is_matching(g, &p.weights) {
            return false;
        }
        for (s, &w) in sum.iter_mut().zip(&p.weights) {
            *s += w;
        }
    }
    sum == x
}

fn check_verified(g: &Graph, x: &[u32], t: u32, r: &SplitResult) -> Result<()> {
    if verify_decomposition(g, x, t, &r.parts) {
        Ok(())
    } else {
        Err(Error::internal(format!(
            "decomposition of a {t}-matching failed verification"
        )))
    }
}

fn subtract(x: &[u32], m: &[EdgeIndex]) -> Vec<u32> {
    let mut y = x.to_vec();
    for &e in m {
        y[e] -= 1;
    }
    y
}

/// Level 0 and level 1 need no search: the only 0-matching is zero and a
/// 1-matching is a matching.
fn trivial_split(g: &Graph, x: &[u32], t: u32, method: SplitMethod) -> Option<SplitResult> {
    match t {
        0 => x.iter().all(|&w| w == 0).then(|| SplitResult::new(Vec::new(), method)),
        1 => is_matching(g, x).then(|| {
            let part = EdgeWeighting::new(x.to_vec(), 1);
            let edges = part.support();
            SplitResult::new(Vec::new(), method).prepend(part, 1, vec![(Rule::Remainder, edges)])
        }),
        _ => None,
    }
}

fn indicator(edge_count: usize, m: &[EdgeIndex]) -> EdgeWeighting {
    EdgeWeighting::indicator(edge_count, m)
}
