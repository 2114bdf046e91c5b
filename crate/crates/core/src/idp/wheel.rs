//! Splitting t-matchings on subgraphs of wheels.
//!
//! A matching `m` splits a nondegenerate t-matching `x` exactly when it
//! saturates every tight vertex and gives every tight odd structure `U` at
//! least `I(U)` edges. The tight odd slices are first reduced to a
//! troublesome set: members share no rim edge and have no tight interior
//! rim vertex. Then `m` is built from at most one spoke plus rim edges.
//! The rim edges are chosen by a small dynamic program over rim positions.
//! It enforces the tight-vertex cover, the member counts and the outer
//! cycle, and prefers the lowest rim position at each choice. When two
//! full-index members are joined by a (pseudo)conductor, the alternating
//! pattern through both is fixed first.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::exhaustive::find_peel;
use super::{
    check_verified, default_split_budget, indicator, subtract, trivial_split, Diagnostics, Rule, SplitMethod,
    SplitResult,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{EdgeIndex, Graph, Vertex};
use crate::polytope::{structure_index, support_graph, vertex_weight, EdgeWeighting, MatchingPolytope, WeightAnalysis};
use crate::structures::{
    classify_pair, slices, spokes_meet_both_classes, wheel_odd_structures, PairKind, Slice, WheelFrame,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TroubleSlice {
    pub slice: Slice,
    /// `I(S)`. A synthetic triangle carries 1, the unit its tight vertex needs.
    pub index: i64,
    pub full_index: bool,
    /// A triangle standing in for a tight rim vertex next to a missing rim
    /// edge, made of its one rim edge and its spoke.
    pub synthetic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapKind {
    /// An odd run of tight rim vertices joined by rim edges.
    Conductor,
    Insulator,
    /// The two arcs share an end vertex; the gap has size `-1`.
    Pseudoconductor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gap {
    /// Member whose arc ends where the gap begins.
    pub from: usize,
    /// Member whose arc starts where the gap ends.
    pub to: usize,
    pub kind: GapKind,
    /// Rim vertices strictly between the two arcs.
    pub interior: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TroublesomeSet {
    /// Tight odd slices ordered by arc start, then synthetic triangles. No
    /// two share a rim edge.
    pub slices: Vec<TroubleSlice>,
    /// Gaps between cyclically consecutive non-synthetic members, when
    /// there are at least two.
    pub gaps: Vec<Gap>,
}

/// A wheel subgraph with a weighting under analysis.
struct Wheel<'a> {
    h: &'a Graph,
    frame: WheelFrame,
    x: &'a [u32],
    t: u32,
}

impl<'a> Wheel<'a> {
    fn new(h: &'a Graph, x: &'a [u32], t: u32) -> Result<Self> {
        let frame = WheelFrame::new(h.vertex_count())?;
        if !frame.contains(h) {
            return Err(Error::input(format!("graph is not a subgraph of W{}", frame.n)));
        }
        if x.len() != h.edge_count() {
            return Err(Error::input("weighting length does not match the edge count"));
        }
        Ok(Wheel { h, frame, x, t })
    }

    fn r(&self) -> usize {
        self.frame.rim_len()
    }

    fn tight(&self, u: Vertex) -> bool {
        vertex_weight(self.h, self.x, u) == self.t as u64
    }

    fn index(&self, s: &Slice) -> i64 {
        structure_index(self.x, self.t, s.size(), &self.h.induced_edges(&s.vertices()))
    }

    fn full_index(&self, s: &Slice) -> bool {
        s.is_odd() && self.index(s) == (s.size() as i64 - 1) / 2
    }

    fn slice_exists(&self, s: &Slice) -> bool {
        let (h, f) = (self.h, &self.frame);
        if s.closed {
            return f.rim_complete(h) && (0..self.r()).filter(|&u| f.spoke(h, u).is_some()).count() >= 2;
        }
        s.len >= 2
            && f.spoke(h, s.start).is_some()
            && f.spoke(h, s.end()).is_some()
            && s.rim_vertices[..s.len - 1].iter().all(|&u| f.rim_edge(h, u).is_some())
            && !(s.len == self.r() && f.rim_edge(h, s.end()).is_some())
    }

    fn is_odd_structure(&self, s: &Slice) -> bool {
        s.is_odd() && (!s.closed || spokes_meet_both_classes(&self.frame, self.h))
    }

    fn arc(&self, start: Vertex, len: usize) -> Slice {
        Slice::arc(&self.frame, self.frame.step(start, 0), len)
    }

    /// Splits the rim edges covered by two slices sharing a rim edge at
    /// every end vertex of either arc. For interlocking arcs this gives `T'`, `R` and `S'`.
    fn segments(&self, s: &Slice, t: &Slice) -> Vec<Slice> {
        let r = self.r();
        let mut covered = vec![false; r];
        let mut cut = vec![false; r];
        for sl in [s, t] {
            let edges = if sl.closed { sl.len } else { sl.len - 1 };
            for &u in &sl.rim_vertices[..edges] {
                covered[u] = true;
            }
            if !sl.closed {
                cut[sl.start] = true;
                cut[sl.end()] = true;
            }
        }
        let full = covered.iter().all(|&b| b);
        let start = if full {
            (0..r).find(|&u| cut[u])
        } else {
            (0..r).find(|&u| covered[u] && !covered[self.frame.step(u, -1)])
        };
        let Some(start) = start else {
            return Vec::new();
        };
        let steps = covered.iter().filter(|&&b| b).count();
        let seq: Vec<Vertex> = (0..=steps).map(|i| self.frame.step(start, i as isize)).collect();
        let cuts: Vec<usize> = (0..seq.len()).filter(|&i| cut[seq[i]] || i + 1 == seq.len()).collect();
        cuts.windows(2).map(|w| self.arc(seq[w[0]], w[1] - w[0] + 1)).collect()
    }

    fn keep_pieces(&self, members: &mut Vec<Slice>, pieces: Vec<Slice>) {
        for p in pieces {
            if self.slice_exists(&p) && self.is_odd_structure(&p) && self.index(&p) > 0 && !members.contains(&p) {
                members.push(p);
            }
        }
    }

    fn interior_tight(&self, s: &Slice) -> Option<usize> {
        let range = if s.closed { 0..s.len } else { 1..s.len - 1 };
        range.into_iter().find(|&i| self.tight(s.rim_vertices[i]))
    }

    fn reduce(&self, diag: &mut Diagnostics) -> Result<TroublesomeSet> {
        let mut members: Vec<Slice> = slices(self.h, self.frame.n)?
            .into_iter()
            .filter(|s| self.is_odd_structure(s) && self.index(s) > 0)
            .collect();
        loop {
            let pair = (0..members.len()).find_map(|i| {
                (i + 1..members.len())
                    .find(|&j| classify_pair(&members[i], &members[j]) == PairKind::Interlocking)
                    .map(|j| (i, j))
            });
            if let Some((i, j)) = pair {
                let (s, t) = (members[i].clone(), members[j].clone());
                let pieces = self.segments(&s, &t);
                diag.interlocking_reductions += 1;
                let inside = |outer: &Slice, inner: &Slice| inner.rim_vertices.iter().all(|&u| outer.contains_rim(u));
                if !s.closed && !t.closed && !inside(&s, &t) && !inside(&t, &s) {
                    for outer in [&s, &t] {
                        let bound: i64 = pieces.iter().filter(|p| inside(outer, p)).map(|p| self.index(p)).sum();
                        if self.index(outer) > bound {
                            diag.interlocking_bound_violations += 1;
                        }
                    }
                }
                members.remove(j);
                members.remove(i);
                self.keep_pieces(&mut members, pieces);
                continue;
            }
            let interior = members
                .iter()
                .enumerate()
                .find_map(|(i, s)| self.interior_tight(s).map(|k| (i, k)));
            if let Some((i, k)) = interior {
                let s = members.remove(i);
                diag.interior_splits += 1;
                let pieces = if s.closed {
                    vec![self.arc(self.frame.step(s.rim_vertices[k], 1), self.r() - 1)]
                } else {
                    vec![self.arc(s.start, k), self.arc(s.rim_vertices[k + 1], s.len - k - 1)]
                };
                self.keep_pieces(&mut members, pieces.into_iter().filter(|p| p.len >= 2).collect());
                continue;
            }
            break;
        }
        members.sort_by_key(|s| (s.start, s.len, s.closed));
        let mut out: Vec<TroubleSlice> = members
            .iter()
            .map(|s| TroubleSlice {
                slice: s.clone(),
                index: self.index(s),
                full_index: self.full_index(s),
                synthetic: false,
            })
            .collect();
        let gaps = self.gaps(&out);
        let (h, f) = (self.h, &self.frame);
        for u in 0..self.r() {
            if !self.tight(u) || members.iter().any(|s| s.contains_rim(u)) || f.spoke(h, u).is_none() {
                continue;
            }
            let back = f.rim_edge(h, f.step(u, -1)).is_some();
            let forward = f.rim_edge(h, u).is_some();
            let arc = match (back, forward) {
                (true, false) => self.arc(f.step(u, -1), 2),
                (false, true) => self.arc(u, 2),
                _ => continue,
            };
            if out.iter().all(|m| m.slice != arc) {
                out.push(TroubleSlice {
                    slice: arc,
                    index: 1,
                    full_index: true,
                    synthetic: true,
                });
            }
        }
        Ok(TroublesomeSet { slices: out, gaps })
    }

    fn gaps(&self, members: &[TroubleSlice]) -> Vec<Gap> {
        let (h, f) = (self.h, &self.frame);
        if members.len() < 2 || members.iter().any(|m| m.slice.closed) {
            return Vec::new();
        }
        let k = members.len();
        (0..k)
            .map(|i| {
                let j = (i + 1) % k;
                let (from_v, to_v) = (members[i].slice.end(), members[j].slice.start);
                if from_v == to_v {
                    return Gap {
                        from: i,
                        to: j,
                        kind: GapKind::Pseudoconductor,
                        interior: Vec::new(),
                    };
                }
                let mut interior = Vec::new();
                let mut u = f.step(from_v, 1);
                while u != to_v {
                    interior.push(u);
                    u = f.step(u, 1);
                }
                let joined = std::iter::once(from_v)
                    .chain(interior.iter().copied())
                    .all(|u| f.rim_edge(h, u).is_some());
                let conductor = joined && interior.len() % 2 == 1 && interior.iter().all(|&u| self.tight(u));
                Gap {
                    from: i,
                    to: j,
                    kind: if conductor {
                        GapKind::Conductor
                    } else {
                        GapKind::Insulator
                    },
                    interior,
                }
            })
            .collect()
    }
}

/// The rim as positions `0..r` starting at `origin`; position `p` holds
/// rim vertex `origin + p` and the rim edge to its successor.
struct RimProblem {
    r: usize,
    origin: Vertex,
    edge: Vec<Option<EdgeIndex>>,
    forced: Vec<Option<bool>>,
    tight: Vec<bool>,
    spoke_pos: Option<usize>,
    member_at: Vec<Option<usize>>,
    member_begin: Vec<usize>,
    member_end: Vec<usize>,
    need: Vec<u32>,
    delta_need: u32,
}

type DpState = (usize, bool, bool, u32, u32);

impl RimProblem {
    fn new(w: &Wheel, set: &TroublesomeSet, spoke: Option<Vertex>, forced_edges: &HashMap<Vertex, bool>) -> Self {
        let r = w.r();
        let origin = set.slices.iter().map(|m| m.slice.start).min().unwrap_or(0);
        let vertex = |p: usize| (origin + p) % r;
        let pos = |u: Vertex| (u + r - origin) % r;
        let mut member_at = vec![None; r];
        let mut member_begin = Vec::new();
        let mut member_end = Vec::new();
        let mut need = Vec::new();
        for (k, m) in set.slices.iter().enumerate() {
            let (begin, end) = if m.slice.closed {
                (0, r - 1)
            } else {
                let b = pos(m.slice.start);
                (b, b + m.slice.len - 2)
            };
            for slot in &mut member_at[begin..=end] {
                *slot = Some(k);
            }
            member_begin.push(begin);
            member_end.push(end);
            let from_spoke = spoke.is_some_and(|s| m.slice.contains_rim(s)) as i64;
            need.push((m.index - from_spoke).max(0) as u32);
        }
        let (h, f) = (w.h, &w.frame);
        let delta_need = if f.n % 2 == 0 && f.rim_complete(h) {
            let rim: Vec<EdgeIndex> = (0..r).filter_map(|u| f.rim_edge(h, u)).collect();
            structure_index(w.x, w.t, r, &rim).max(0) as u32
        } else {
            0
        };
        RimProblem {
            r,
            origin,
            edge: (0..r).map(|p| f.rim_edge(h, vertex(p))).collect(),
            forced: (0..r).map(|p| forced_edges.get(&vertex(p)).copied()).collect(),
            tight: (0..r).map(|p| w.tight(vertex(p))).collect(),
            spoke_pos: spoke.map(pos),
            member_at,
            member_begin,
            member_end,
            need,
            delta_need,
        }
    }

    fn vertex(&self, p: usize) -> Vertex {
        (self.origin + p) % self.r
    }

    fn step(&self, (p, first, last, count, delta): DpState, pick: bool) -> Option<DpState> {
        let r = self.r;
        if pick {
            let blocked = self.edge[p].is_none()
                || self.forced[p] == Some(false)
                || last
                || self.spoke_pos == Some(p)
                || self.spoke_pos == Some((p + 1) % r)
                || (p == r - 1 && first);
            if blocked {
                return None;
            }
        } else if self.forced[p] == Some(true) {
            return None;
        }
        if p >= 1 && self.tight[p] && !(last || pick || self.spoke_pos == Some(p)) {
            return None;
        }
        let mut next_count = 0;
        if let Some(k) = self.member_at[p] {
            let base = if p == self.member_begin[k] { 0 } else { count };
            next_count = (base + pick as u32).min(self.need[k]);
            if p == self.member_end[k] {
                if next_count < self.need[k] {
                    return None;
                }
                next_count = 0;
            }
        }
        let first = if p == 0 { pick } else { first };
        Some((
            p + 1,
            first,
            pick,
            next_count,
            (delta + pick as u32).min(self.delta_need),
        ))
    }

    fn completes(&self, state: DpState, memo: &mut HashMap<DpState, bool>) -> bool {
        let (p, first, last, _, delta) = state;
        if p == self.r {
            return (!self.tight[0] || first || last || self.spoke_pos == Some(0)) && delta >= self.delta_need;
        }
        if let Some(&known) = memo.get(&state) {
            return known;
        }
        let ok = [true, false]
            .into_iter()
            .any(|pick| self.step(state, pick).is_some_and(|next| self.completes(next, memo)));
        memo.insert(state, ok);
        ok
    }

    /// Rim edges of a feasible choice, picking an edge whenever the rest
    /// can still be completed.
    fn solve(&self) -> Option<Vec<(usize, EdgeIndex)>> {
        let mut memo = HashMap::new();
        let mut state = (0, false, false, 0, 0);
        if !self.completes(state, &mut memo) {
            return None;
        }
        let mut picks = Vec::new();
        while state.0 < self.r {
            let p = state.0;
            let (pick, next) = [true, false]
                .into_iter()
                .find_map(|pick| {
                    self.step(state, pick)
                        .filter(|&next| self.completes(next, &mut memo))
                        .map(|next| (pick, next))
                })
                .expect("a completable state has a completable successor");
            if pick {
                picks.push((p, self.edge[p].expect("picked edges exist")));
            }
            state = next;
        }
        Some(picks)
    }
}

/// The rules that put each group of edges into a part.
type Steps = Vec<(Rule, Vec<EdgeIndex>)>;

/// How a candidate fixes the construction before the rim is filled.
struct Attempt {
    spoke: Option<Vertex>,
    /// Rim edges `{u, u+1}`, keyed by `u`, forced in or out.
    forced: HashMap<Vertex, bool>,
    /// Rim edges, keyed by `u`, and whether the spoke came from the
    /// joined-slices construction.
    joined: HashSet<Vertex>,
    joined_spoke: bool,
}

impl Attempt {
    fn spoke(spoke: Option<Vertex>) -> Self {
        Attempt {
            spoke,
            forced: HashMap::new(),
            joined: HashSet::new(),
            joined_spoke: false,
        }
    }
}

struct Construction<'a> {
    w: Wheel<'a>,
    poly: &'a MatchingPolytope,
    set: TroublesomeSet,
}

impl Construction<'_> {
    /// The first gap joining two full-index members through a conductor or
    /// pseudoconductor.
    fn joined_gap(&self) -> Option<&Gap> {
        self.set.gaps.iter().find(|g| {
            g.kind != GapKind::Insulator && self.set.slices[g.from].full_index && self.set.slices[g.to].full_index
        })
    }

    /// At most three real members, and a third one is partial index and
    /// meets both others in a vertex only.
    fn joined_structure_holds(&self, gap: &Gap) -> bool {
        let real: Vec<usize> = (0..self.set.slices.len())
            .filter(|&i| !self.set.slices[i].synthetic)
            .collect();
        match real.len() {
            2 => true,
            3 => real.iter().filter(|&&i| i != gap.from && i != gap.to).all(|&i| {
                let third = &self.set.slices[i];
                !third.full_index
                    && [gap.from, gap.to]
                        .iter()
                        .all(|&j| classify_pair(&third.slice, &self.set.slices[j].slice) == PairKind::SomewhatDisjoint)
            }),
            _ => false,
        }
    }

    /// Spoke at the far end of one slice, then every other rim edge through
    /// both slices and the gap; a third slice takes the alternating edges
    /// of its boundary interior.
    fn joined_attempts(&self, gap: &Gap) -> Vec<Attempt> {
        let (s, t) = (&self.set.slices[gap.from].slice, &self.set.slices[gap.to].slice);
        let mut path: Vec<Vertex> = s.rim_vertices.clone();
        path.extend(&gap.interior);
        let skip = usize::from(gap.kind == GapKind::Pseudoconductor);
        path.extend(&t.rim_vertices[skip..]);
        let third: Vec<&Slice> = self
            .set
            .slices
            .iter()
            .enumerate()
            .filter(|(i, m)| !m.synthetic && *i != gap.from && *i != gap.to)
            .map(|(_, m)| &m.slice)
            .collect();
        let mut out = Vec::new();
        for reversed in [false, true] {
            let mut attempt = Attempt::spoke(Some(if reversed { *path.last().unwrap() } else { path[0] }));
            attempt.joined_spoke = true;
            let k = path.len();
            for (i, &v) in path[..k - 1].iter().enumerate() {
                // Edge {path[i], path[i+1]}; counted from the spoke end.
                let from_spoke = if reversed { k - 2 - i } else { i };
                let pick = from_spoke % 2 == 1;
                attempt.forced.insert(v, pick);
                attempt.joined.insert(v);
            }
            for w in &third {
                let p = &w.rim_vertices;
                for i in 0..p.len() - 1 {
                    attempt.forced.entry(p[i]).or_insert(i % 2 == 1 && i + 2 < p.len());
                }
            }
            out.push(attempt);
        }
        out
    }

    /// Spoke candidates: outer spokes of full-index members, then of the
    /// other members, then every spoke by index. A loose centre may also
    /// take no spoke, tried first.
    fn spoke_attempts(&self) -> Vec<Attempt> {
        let (h, f) = (self.w.h, &self.w.frame);
        let mut order: Vec<Vertex> = Vec::new();
        let real = || self.set.slices.iter().filter(|m| !m.synthetic);
        for m in real().filter(|m| m.full_index).chain(real().filter(|m| !m.full_index)) {
            if !m.slice.closed {
                let mut ends = [m.slice.start, m.slice.end()];
                ends.sort_unstable();
                order.extend(ends);
            }
        }
        order.extend(0..self.w.r());
        let mut seen = HashSet::new();
        order.retain(|&u| f.spoke(h, u).is_some() && seen.insert(u));
        let mut out = Vec::new();
        if !self.w.tight(f.center()) {
            out.push(Attempt::spoke(None));
        }
        out.extend(order.into_iter().map(|u| Attempt::spoke(Some(u))));
        out
    }

    fn run(&self, attempt: &Attempt) -> Option<(Vec<EdgeIndex>, Steps)> {
        let problem = RimProblem::new(&self.w, &self.set, attempt.spoke, &attempt.forced);
        let picks = problem.solve()?;
        let (h, f) = (self.w.h, &self.w.frame);
        let mut m: Vec<EdgeIndex> = picks.iter().map(|&(_, e)| e).collect();
        let spoke = attempt.spoke.and_then(|u| f.spoke(h, u));
        m.extend(spoke);
        m.sort_unstable();
        if !self.poly.admits(&subtract(self.w.x, &m), self.w.t - 1) {
            return None;
        }
        let conductor: HashSet<Vertex> = self
            .set
            .gaps
            .iter()
            .filter(|g| g.kind == GapKind::Conductor)
            .flat_map(|g| std::iter::once(self.set.slices[g.from].slice.end()).chain(g.interior.iter().copied()))
            .collect();
        let mut steps: Vec<(Rule, Vec<EdgeIndex>)> = Vec::new();
        let mut push = |rule: Rule, e: EdgeIndex| match steps.iter_mut().find(|(r, _)| *r == rule) {
            Some((_, edges)) => edges.push(e),
            None => steps.push((rule, vec![e])),
        };
        if let Some(e) = spoke {
            push(
                if attempt.joined_spoke {
                    Rule::JoinedSlices
                } else {
                    Rule::Spoke
                },
                e,
            );
        }
        for &(p, e) in &picks {
            let u = problem.vertex(p);
            let rule = if attempt.joined.contains(&u) {
                Rule::JoinedSlices
            } else if let Some(k) = problem.member_at[p] {
                if self.set.slices[k].synthetic {
                    Rule::MissingEdgeTriangle
                } else {
                    Rule::SlicePattern
                }
            } else if conductor.contains(&u) {
                Rule::Conductor
            } else {
                Rule::Insulator
            };
            push(rule, e);
        }
        for (_, edges) in &mut steps {
            edges.sort_unstable();
        }
        Some((m, steps))
    }

    fn build(&self, diag: &mut Diagnostics) -> Option<(Vec<EdgeIndex>, Steps)> {
        if let Some(gap) = self.joined_gap() {
            diag.joined_full_slices += 1;
            if !self.joined_structure_holds(gap) {
                diag.joined_structure_violations += 1;
            }
            if let Some(found) = self.joined_attempts(gap).iter().find_map(|a| self.run(a)) {
                return Some(found);
            }
        }
        self.spoke_attempts().iter().find_map(|a| self.run(a))
    }
}

/// Troublesome set of the tight odd slices of `h` under the analysed
/// weighting.
pub fn reduce_tight_structures(h: &Graph, analysis: &WeightAnalysis) -> Result<TroublesomeSet> {
    Wheel::new(h, &analysis.weights, analysis.level)?.reduce(&mut Diagnostics::default())
}

/// Wheel polytope of a subgraph, read off from its slices.
fn wheel_polytope(h: &Graph) -> Result<MatchingPolytope> {
    Ok(MatchingPolytope::from_parts(
        h.clone(),
        wheel_odd_structures(h, h.vertex_count())?,
    ))
}

/// One level: a matching `m` of `h` with `x - m` a (t-1)-matching, the
/// rules that chose it, and whether search had to take over.
fn peel(
    h: &Graph,
    x: &[u32],
    t: u32,
    budget: &Budget,
    diag: &mut Diagnostics,
) -> Result<(Vec<EdgeIndex>, Steps, bool)> {
    let poly = wheel_polytope(h)?;
    let w = Wheel::new(h, x, t)?;
    let set = w.reduce(diag)?;
    diag.wheel_levels += 1;
    let construction = Construction { w, poly: &poly, set };
    if let Some((m, steps)) = construction.build(diag) {
        return Ok((m, steps, false));
    }
    diag.wheel_fallbacks += 1;
    let meter = budget.start("wheel split fallback search");
    let m = find_peel(&poly, x, t, &meter)?
        .ok_or_else(|| Error::internal(format!("no matching splits this {t}-matching on a wheel subgraph")))?;
    Ok((m.clone(), vec![(Rule::Fallback, m)], true))
}

fn split_levels(h: &Graph, x: &[u32], t: u32, budget: &Budget, diag: &mut Diagnostics) -> Result<SplitResult> {
    if let Some(r) = trivial_split(h, x, t, SplitMethod::Wheel) {
        return Ok(r);
    }
    if t <= 1 {
        return Err(Error::internal(format!("remainder is not a {t}-matching")));
    }
    let (support, map) = support_graph(h, x);
    let local: Vec<u32> = map.iter().map(|&e| x[e]).collect();
    let (m, steps, fallback) = peel(&support, &local, t, budget, diag)?;
    let m: Vec<EdgeIndex> = m.iter().map(|&e| map[e]).collect();
    let steps = steps
        .into_iter()
        .map(|(rule, edges)| (rule, edges.iter().map(|&e| map[e]).collect()))
        .collect();
    let rest = split_levels(h, &subtract(x, &m), t - 1, budget, diag)?;
    let mut r = rest.prepend(indicator(h.edge_count(), &m), t, steps);
    r.fallback_used |= fallback;
    Ok(r)
}

pub fn wheel_split(h: &Graph, x: &EdgeWeighting, t: u32) -> Result<SplitResult> {
    wheel_split_with(h, x, t, &default_split_budget())
}

/// Decomposes a nondegenerate t-matching of a subgraph `h` of `W_n`,
/// labelled as in [`WheelFrame`] with `n = |V(h)|`, into `t` matchings.
/// Each level runs the construction on the support of what remains.
pub fn wheel_split_with(h: &Graph, x: &EdgeWeighting, t: u32, budget: &Budget) -> Result<SplitResult> {
    Wheel::new(h, &x.weights, t)?;
    if x.weights.contains(&0) {
        return Err(Error::input("weighting is degenerate; restrict to its support first"));
    }
    if !wheel_polytope(h)?.admits(&x.weights, t) {
        return Err(Error::input(format!("weighting is not a {t}-matching")));
    }
    let mut diag = Diagnostics::default();
    let mut r = split_levels(h, &x.weights, t, budget, &mut diag)?;
    r.method = SplitMethod::Wheel;
    r.diagnostics = diag;
    check_verified(h, &x.weights, t, &r)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};
    use crate::idp::verify_decomposition;
    use crate::polytope::analyze;

    fn wheel(n: usize) -> Graph {
        make_family(&Family::Wheel(n)).unwrap()
    }

    fn weights(g: &Graph, entries: &[((Vertex, Vertex), u32)]) -> Vec<u32> {
        let mut x = vec![0; g.edge_count()];
        for &((u, v), w) in entries {
            x[g.edge_index(u, v).unwrap()] = w;
        }
        x
    }

    fn restricted(g: &Graph, x: &[u32]) -> (Graph, Vec<u32>) {
        let (h, map) = support_graph(g, x);
        let local = map.iter().map(|&e| x[e]).collect();
        (h, local)
    }

    #[test]
    fn single_spoke() {
        let g = wheel(5);
        let (h, x) = restricted(&g, &weights(&g, &[((0, 4), 3)]));
        let r = wheel_split(&h, &EdgeWeighting::new(x.clone(), 3), 3).unwrap();
        assert!(r.parts.iter().all(|p| p.weights == vec![1]));
        assert!(!r.fallback_used);
    }

    #[test]
    fn no_tight_structures_give_empty_set() {
        let g = wheel(6);
        let x = vec![1u32; g.edge_count()];
        let a = analyze(&g, &EdgeWeighting::new(x, 5), 5).unwrap();
        let set = reduce_tight_structures(&g, &a).unwrap();
        assert!(set.slices.is_empty() && set.gaps.is_empty());
    }

    #[test]
    fn interlocking_pair_reduces_to_its_pieces() {
        // W7, rim 0..5. S = [2,3,4,5] and T = [0,1,2,3] interlock on {2,3}.
        let g = wheel(7);
        let w = Wheel::new(&g, &[0; 12], 2).unwrap();
        let s = w.arc(2, 4);
        let t = w.arc(0, 4);
        let pieces = w.segments(&s, &t);
        assert_eq!(pieces, vec![w.arc(0, 3), w.arc(2, 2), w.arc(3, 3)]);
        let nested = w.segments(&w.arc(0, 5), &w.arc(1, 2));
        assert_eq!(nested, vec![w.arc(0, 2), w.arc(1, 2), w.arc(2, 3)]);
    }

    #[test]
    fn tight_interior_vertex_index_identity() {
        // Every nondegenerate 2- and 3-matching of a W6 subgraph with a tight
        // odd slice S and tight interior rim vertex u: with R and T the
        // arcs on either side of u, I(S) = I(R) + I(T) + t.
        let g = wheel(6);
        let p = MatchingPolytope::new(&g).unwrap();
        let mut seen = 0;
        for t in 2..=3 {
            for x in p.enumerate(t, &Budget::unlimited()).unwrap() {
                let w = Wheel::new(&g, &x.weights, t).unwrap();
                for s in slices(&g, 6).unwrap() {
                    if s.closed || !s.is_odd() || w.index(&s) <= 0 {
                        continue;
                    }
                    let Some(k) = w.interior_tight(&s) else { continue };
                    let left = w.arc(s.start, k);
                    let right = w.arc(s.rim_vertices[k + 1], s.len - k - 1);
                    assert_eq!(w.index(&s), w.index(&left) + w.index(&right) + t as i64);
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn interlocking_index_identity() {
        // For interlocking tight odd slices S and T, the pieces P and Q of S
        // on either side of T's end vertex have opposite parity and share
        // one spoke e: I(S) = I(P) + I(Q) + (t - 1) - x(e).
        let g = wheel(6);
        let p = MatchingPolytope::new(&g).unwrap();
        let f = WheelFrame::new(6).unwrap();
        let mut seen = 0;
        for t in 2..=4 {
            for x in p.enumerate(t, &Budget::unlimited()).unwrap() {
                let w = Wheel::new(&g, &x.weights, t).unwrap();
                let tight: Vec<Slice> = slices(&g, 6)
                    .unwrap()
                    .into_iter()
                    .filter(|s| !s.closed && s.is_odd() && w.index(s) > 0)
                    .collect();
                for s in &tight {
                    for other in &tight {
                        if classify_pair(s, other) != PairKind::Interlocking
                            || !(1..s.len - 1).any(|i| s.rim_vertices[i] == other.start)
                        {
                            continue;
                        }
                        let k = s.rim_vertices.iter().position(|&u| u == other.start).unwrap();
                        let (left, right) = (w.arc(s.start, k + 1), w.arc(other.start, s.len - k));
                        assert_ne!(left.is_odd(), right.is_odd());
                        let spoke = x.weights[f.spoke(&g, other.start).unwrap()] as i64;
                        assert_eq!(w.index(s), w.index(&left) + w.index(&right) + t as i64 - 1 - spoke);
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn adjacent_full_index_slices() {
        // Rim 0..3 of W5, centre 4: S = {3, 0, c}, T = {0, 1, c}, t = 4.
        let g = wheel(5);
        let full = weights(&g, &[((0, 4), 2), ((3, 4), 1), ((0, 3), 1), ((1, 4), 1), ((0, 1), 1)]);
        let (h, x) = restricted(&g, &full);
        let r = wheel_split(&h, &EdgeWeighting::new(x.clone(), 4), 4).unwrap();
        assert!(!r.fallback_used);
        assert!(verify_decomposition(&h, &x, 4, &r.parts));
        let m = &r.parts[0];
        let outer_s = m.weights[h.edge_index(0, 3).unwrap()];
        let outer_t = m.weights[h.edge_index(0, 1).unwrap()];
        assert_eq!(outer_s + outer_t, 1);
        assert_eq!(r.diagnostics.joined_full_slices, 1);
        assert_eq!(r.diagnostics.joined_structure_violations, 0);
        assert_eq!(r.trace[0].rule, Rule::JoinedSlices);
    }

    #[test]
    fn zero_weight_trick_instance() {
        // W9, rim 0..7, centre 8.
        let g = wheel(9);
        let full = weights(
            &g,
            &[
                ((1, 8), 1),
                ((0, 1), 1),
                ((6, 8), 1),
                ((5, 8), 1),
                ((5, 6), 1),
                ((0, 7), 2),
            ],
        );
        let (h, x) = restricted(&g, &full);
        let r = wheel_split(&h, &EdgeWeighting::new(x.clone(), 3), 3).unwrap();
        assert!(!r.fallback_used);
        assert!(verify_decomposition(&h, &x, 3, &r.parts));
    }

    #[test]
    fn rejects_bad_input() {
        let g = wheel(5);
        let x = EdgeWeighting::new(vec![1; g.edge_count()], 2);
        assert!(matches!(
            wheel_split(&g, &EdgeWeighting::new(vec![0; 8], 2), 2),
            Err(Error::Input(_))
        ));
        assert!(matches!(wheel_split(&g, &x, 2), Err(Error::Input(_))));
        let c5 = make_family(&Family::Cycle(5)).unwrap();
        assert!(matches!(
            wheel_split(&c5, &EdgeWeighting::new(vec![1; 5], 2), 2),
            Err(Error::Input(_))
        ));
    }
}
