//! Odd structures of a graph, and slices of wheel subgraphs.
//!
//! An odd structure is a vertex set `U` with `|U|` odd and at least 3 whose
//! induced subgraph is 2-connected and factor-critical. Each one contributes
//! the constraint `x(E(G[U])) <= (|U| - 1) / 2` to the matching polytope.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{blocks, is_factor_critical, EdgeIndex, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OddStructure {
    /// Sorted host vertices.
    pub vertices: Vec<Vertex>,
    /// Sorted indices of the host edges induced by `vertices`.
    pub edges: Vec<EdgeIndex>,
}

impl OddStructure {
    fn new(g: &Graph, vertices: Vec<Vertex>) -> Self {
        let edges = g.induced_edges(&vertices);
        OddStructure { vertices, edges }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// `(|U| - 1) / 2`, the bound of the constraint at level 1.
    pub fn half(&self) -> u64 {
        (self.vertices.len() as u64 - 1) / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureLimits {
    /// Largest subset size examined.
    pub vertex_cap: usize,
    /// Budget for the number of connected subsets visited.
    pub budget: Budget,
}

impl Default for StructureLimits {
    fn default() -> Self {
        StructureLimits {
            vertex_cap: 20,
            budget: Budget::nodes(1 << 24),
        }
    }
}

const MAX_VERTICES: usize = 128;

/// All odd structures with at most `limits.vertex_cap` vertices, ordered by
/// size and then lexicographically by vertex list.
///
/// Only connected induced subsets are visited: each is generated exactly
/// once from its smallest vertex by growing along the neighbourhood while
/// excluding vertices already branched on.
pub fn odd_structures(g: &Graph, limits: &StructureLimits) -> Result<Vec<OddStructure>> {
    if limits.vertex_cap < 3 {
        return Err(Error::input("vertex cap must be at least 3"));
    }
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::input(format!(
            "odd-structure enumeration supports at most {MAX_VERTICES} vertices, got {n}"
        )));
    }
    let nbr: Vec<u128> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u128, |m, &w| m | (1 << w)))
        .collect();
    let mut search = ConnectedSubsets {
        g,
        nbr: &nbr,
        cap: limits.vertex_cap.min(n),
        meter: limits.budget.start("odd-structure enumeration"),
        found: Vec::new(),
    };
    for (v, &adjacent) in nbr.iter().enumerate() {
        let below: u128 = if v == 127 { u128::MAX >> 1 } else { (1u128 << v) - 1 };
        let forbidden = below | (1 << v);
        let frontier = adjacent & !forbidden;
        if !search.grow(1 << v, 1, frontier, forbidden) {
            return Err(search.meter.exceeded());
        }
    }
    let mut found = search.found;
    found.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    Ok(found)
}

struct ConnectedSubsets<'a> {
    g: &'a Graph,
    nbr: &'a [u128],
    cap: usize,
    meter: crate::budget::Meter,
    found: Vec<OddStructure>,
}

impl ConnectedSubsets<'_> {
    // `frontier` = N(set) minus set minus forbidden.
    fn grow(&mut self, set: u128, size: usize, frontier: u128, forbidden: u128) -> bool {
        if !self.meter.tick(1) {
            return false;
        }
        if size >= 3 && size % 2 == 1 {
            self.examine(set);
        }
        if size == self.cap {
            return true;
        }
        let mut forbidden = forbidden;
        let mut rest = frontier;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let bit = 1u128 << w;
            let next_set = set | bit;
            let next_frontier = (frontier | self.nbr[w]) & !next_set & !forbidden;
            if !self.grow(next_set, size + 1, next_frontier, forbidden) {
                return false;
            }
            forbidden |= bit;
        }
        true
    }

    fn examine(&mut self, set: u128) {
        let vertices: Vec<Vertex> = (0..self.g.vertex_count()).filter(|&u| set >> u & 1 == 1).collect();
        if vertices.iter().any(|&u| (self.nbr[u] & set).count_ones() < 2) {
            return;
        }
        let (sub, _) = self.g.induced_subgraph(&vertices);
        if is_two_connected(&sub) && is_factor_critical(&sub) {
            self.found.push(OddStructure::new(self.g, vertices));
        }
    }
}

fn is_two_connected(g: &Graph) -> bool {
    if g.vertex_count() < 3 || !g.is_connected() {
        return false;
    }
    let d = blocks(g);
    d.blocks.len() == 1 && d.cut_vertices.is_empty()
}

/// Checks the defining properties directly.
pub fn is_odd_structure(g: &Graph, vertices: &[Vertex]) -> bool {
    if vertices.len() < 3 || vertices.len().is_multiple_of(2) {
        return false;
    }
    let (sub, _) = g.induced_subgraph(vertices);
    is_two_connected(&sub) && is_factor_critical(&sub)
}

/// The rim/spoke layout of `W_n`: rim vertices `0..n-1` in cyclic order and
/// the centre `n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WheelFrame {
    pub n: usize,
}

impl WheelFrame {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::input("wheel needs at least 4 vertices"));
        }
        Ok(WheelFrame { n })
    }

    pub fn rim_len(&self) -> usize {
        self.n - 1
    }

    pub fn center(&self) -> Vertex {
        self.n - 1
    }

    /// Rim vertex `i` steps after `u`, cyclically.
    pub fn step(&self, u: Vertex, i: isize) -> Vertex {
        let r = self.rim_len() as isize;
        (u as isize + i).rem_euclid(r) as usize
    }

    /// Index in `h` of the rim edge `{u, u+1}`, if present.
    pub fn rim_edge(&self, h: &Graph, u: Vertex) -> Option<EdgeIndex> {
        h.edge_index(u, self.step(u, 1))
    }

    /// Index in `h` of the spoke at rim vertex `u`, if present.
    pub fn spoke(&self, h: &Graph, u: Vertex) -> Option<EdgeIndex> {
        h.edge_index(u, self.center())
    }

    pub fn is_spoke(&self, h: &Graph, e: EdgeIndex) -> bool {
        h.edge(e).1 == self.center()
    }

    /// `h` has exactly the vertices of `W_n` and only rim edges and spokes.
    pub fn contains(&self, h: &Graph) -> bool {
        let r = self.rim_len();
        h.vertex_count() == self.n
            && h.edges()
                .iter()
                .all(|&(u, v)| v == self.center() || (v == u + 1 && v < r) || (u == 0 && v == r - 1 && r >= 3))
    }

    fn check(&self, h: &Graph) -> Result<()> {
        if self.contains(h) {
            Ok(())
        } else {
            Err(Error::input(format!("graph is not a subgraph of W{}", self.n)))
        }
    }

    /// Every rim edge of the wheel is present in `h`.
    pub fn rim_complete(&self, h: &Graph) -> bool {
        (0..self.rim_len()).all(|u| self.rim_edge(h, u).is_some())
    }
}

/// A 2-connected induced subgraph of a wheel subgraph containing the centre.
///
/// The rim part is the arc `start, start+1, ..., start+len-1`. When
/// `closed` is set the arc is the whole rim and the boundary is the rim
/// cycle itself rather than a path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Slice {
    pub start: Vertex,
    pub len: usize,
    pub closed: bool,
    /// Rim vertices in arc order.
    pub rim_vertices: Vec<Vertex>,
    pub center: Vertex,
}

impl Slice {
    pub fn arc(frame: &WheelFrame, start: Vertex, len: usize) -> Self {
        let rim_vertices = (0..len).map(|i| frame.step(start, i as isize)).collect();
        Slice {
            start,
            len,
            closed: false,
            rim_vertices,
            center: frame.center(),
        }
    }

    pub fn full(frame: &WheelFrame) -> Self {
        let mut s = Slice::arc(frame, 0, frame.rim_len());
        s.closed = true;
        s
    }

    /// `|S|`, counting the centre.
    pub fn size(&self) -> usize {
        self.len + 1
    }

    pub fn is_odd(&self) -> bool {
        self.size() % 2 == 1
    }

    pub fn end(&self) -> Vertex {
        *self.rim_vertices.last().expect("slices have at least two rim vertices")
    }

    /// Sorted vertex set, centre included.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = self.rim_vertices.clone();
        v.push(self.center);
        v.sort_unstable();
        v
    }

    /// Unordered rim edges of the boundary `O(S)`.
    pub fn boundary_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.rim_vertices.len();
        let count = if self.closed { k } else { k - 1 };
        (0..count)
            .map(|i| {
                let (a, b) = (self.rim_vertices[i], self.rim_vertices[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn contains_rim(&self, u: Vertex) -> bool {
        self.rim_vertices.contains(&u)
    }

    pub fn to_structure(&self, h: &Graph) -> OddStructure {
        OddStructure::new(h, self.vertices())
    }
}

/// All slices of a subgraph `h` of `W_n`, ordered by `(start, len)` with the
/// closed slice, if any, last.
pub fn slices(h: &Graph, n: usize) -> Result<Vec<Slice>> {
    let frame = WheelFrame::new(n)?;
    frame.check(h)?;
    let r = frame.rim_len();
    let mut out = Vec::new();
    for start in 0..r {
        if frame.spoke(h, start).is_none() {
            continue;
        }
        for len in 2..=r {
            let end = frame.step(start, len as isize - 1);
            if frame.rim_edge(h, frame.step(end, -1)).is_none() {
                break;
            }
            if len == r && frame.rim_edge(h, frame.step(start, -1)).is_some() {
                break;
            }
            if frame.spoke(h, end).is_some() {
                out.push(Slice::arc(&frame, start, len));
            }
        }
    }
    let spokes = (0..r).filter(|&u| frame.spoke(h, u).is_some()).count();
    if frame.rim_complete(h) && spokes >= 2 {
        out.push(Slice::full(&frame));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    AlmostDisjoint,
    SomewhatDisjoint,
    Interlocking,
}

pub fn classify_pair(s: &Slice, t: &Slice) -> PairKind {
    if !s.rim_vertices.iter().any(|u| t.contains_rim(*u)) {
        return PairKind::AlmostDisjoint;
    }
    let t_edges = t.boundary_pairs();
    if s.boundary_pairs().iter().any(|e| t_edges.contains(e)) {
        PairKind::Interlocking
    } else {
        PairKind::SomewhatDisjoint
    }
}

/// Odd structures of a wheel subgraph, read off from its slices: the odd
/// slices, plus the rim cycle when `n` is even and the rim is complete.
/// Ordered like [`odd_structures`].
///
/// Arc slices of odd size always have an odd Hamiltonian cycle through the
/// two endpoint spokes. The closed slice of odd size does not: it is an even
/// rim cycle plus the centre, and is factor-critical exactly when spokes
/// meet both colour classes of the rim.
pub fn wheel_odd_structures(h: &Graph, n: usize) -> Result<Vec<OddStructure>> {
    let frame = WheelFrame::new(n)?;
    let mut out: Vec<OddStructure> = slices(h, n)?
        .iter()
        .filter(|s| s.is_odd() && (!s.closed || spokes_meet_both_classes(&frame, h)))
        .map(|s| s.to_structure(h))
        .collect();
    if n.is_multiple_of(2) && frame.rim_complete(h) {
        out.push(OddStructure::new(h, (0..frame.rim_len()).collect()));
    }
    out.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    out.dedup();
    Ok(out)
}

pub(crate) fn spokes_meet_both_classes(frame: &WheelFrame, h: &Graph) -> bool {
    let mut seen = [false; 2];
    for u in 0..frame.rim_len() {
        if frame.spoke(h, u).is_some() {
            seen[u % 2] = true;
        }
    }
    seen[0] && seen[1]
}
