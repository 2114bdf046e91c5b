//! Matchings, t-matchings and the inequality description of the matching
//! polytope.
//!
//! A t-matching is a nonnegative integer weighting `x` of the edges with
//! `x(u) <= t` at every vertex and `x(U) <= t (|U| - 1) / 2` for every odd
//! structure `U`; these are exactly the lattice points of `t P_M(G)`.

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{essential_vertices, EdgeIndex, Graph, Vertex};
use crate::structures::{odd_structures, OddStructure, StructureLimits};

/// An integer point of `level * P_M(G)`, indexed by canonical edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeWeighting {
    pub weights: Vec<u32>,
    pub level: u32,
}

impl EdgeWeighting {
    pub fn new(weights: Vec<u32>, level: u32) -> Self {
        EdgeWeighting { weights, level }
    }

    pub fn zero(edge_count: usize, level: u32) -> Self {
        EdgeWeighting::new(vec![0; edge_count], level)
    }

    /// Indicator vector of an edge set.
    pub fn indicator(edge_count: usize, edges: &[EdgeIndex]) -> Self {
        let mut w = vec![0; edge_count];
        for &e in edges {
            w[e] = 1;
        }
        EdgeWeighting::new(w, 1)
    }

    /// Edges with positive weight, ascending.
    pub fn support(&self) -> Vec<EdgeIndex> {
        (0..self.weights.len()).filter(|&e| self.weights[e] > 0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexConstraint {
    pub vertex: Vertex,
    /// `ι(u)`, the edges incident to the vertex.
    pub edges: Vec<EdgeIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalitySystem {
    pub edge_count: usize,
    /// `x(e) >= 0` for each of these edges; always all of them.
    pub nonnegativity: Vec<EdgeIndex>,
    /// `x(ι(u)) <= 1` for each essential vertex `u`.
    pub vertex_constraints: Vec<VertexConstraint>,
    /// `x(E(G[U])) <= (|U| - 1) / 2` for each odd structure `U`.
    pub odd_constraints: Vec<OddStructure>,
}

impl InequalitySystem {
    /// Membership of `x` in `t P_M(G)` according to this description.
    pub fn contains(&self, x: &[u32], t: u32) -> bool {
        let t = t as u64;
        x.len() == self.edge_count
            && self.vertex_constraints.iter().all(|c| edge_sum(x, &c.edges) <= t)
            && self
                .odd_constraints
                .iter()
                .all(|u| edge_sum(x, &u.edges) <= t * u.half())
    }
}

fn edge_sum(x: &[u32], edges: &[EdgeIndex]) -> u64 {
    edges.iter().map(|&e| x[e] as u64).sum()
}

/// `x(u)`, the weight of vertex `u`.
pub fn vertex_weight(g: &Graph, x: &[u32], u: Vertex) -> u64 {
    edge_sum(x, g.incident_edges(u))
}

/// A graph together with its odd structures, so repeated membership tests
/// do not re-enumerate them.
#[derive(Debug, Clone)]
pub struct MatchingPolytope {
    graph: Graph,
    essential: Vec<Vertex>,
    structures: Vec<OddStructure>,
}

impl MatchingPolytope {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::with_limits(g, &StructureLimits::default())
    }

    pub fn with_limits(g: &Graph, limits: &StructureLimits) -> Result<Self> {
        Ok(Self::from_parts(g.clone(), odd_structures(g, limits)?))
    }

    /// Uses a precomputed odd-structure list, which must be complete.
    pub fn from_parts(graph: Graph, structures: Vec<OddStructure>) -> Self {
        let essential = essential_vertices(&graph);
        MatchingPolytope {
            graph,
            essential,
            structures,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn structures(&self) -> &[OddStructure] {
        &self.structures
    }

    pub fn essential(&self) -> &[Vertex] {
        &self.essential
    }

    pub fn dimension(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn inequality_system(&self) -> InequalitySystem {
        let g = &self.graph;
        InequalitySystem {
            edge_count: g.edge_count(),
            nonnegativity: (0..g.edge_count()).collect(),
            vertex_constraints: self
                .essential
                .iter()
                .map(|&u| VertexConstraint {
                    vertex: u,
                    edges: g.incident_edges(u).to_vec(),
                })
                .collect(),
            odd_constraints: self.structures.clone(),
        }
    }

    fn check_len(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.graph.edge_count() {
            return Err(Error::input(format!(
                "weighting has {} entries but the graph has {} edges",
                x.len(),
                self.graph.edge_count()
            )));
        }
        Ok(())
    }

    pub fn is_t_matching(&self, x: &[u32], t: u32) -> Result<bool> {
        self.check_len(x)?;
        Ok(self.admits(x, t))
    }

    /// [`Self::is_t_matching`] without the length check.
    pub(crate) fn admits(&self, x: &[u32], t: u32) -> bool {
        let g = &self.graph;
        let t = t as u64;
        (0..g.vertex_count()).all(|u| vertex_weight(g, x, u) <= t)
            && self.structures.iter().all(|s| edge_sum(x, &s.edges) <= t * s.half())
    }

    /// Every vertex and structure constraint of `t P_M(G)` that `x` violates.
    pub fn violations(&self, x: &[u32], t: u32) -> Result<Vec<Violation>> {
        self.check_len(x)?;
        let g = &self.graph;
        let t64 = t as u64;
        let mut out = Vec::new();
        for u in 0..g.vertex_count() {
            let w = vertex_weight(g, x, u);
            if w > t64 {
                out.push(Violation::Vertex {
                    vertex: u,
                    weight: w,
                    bound: t64,
                });
            }
        }
        for s in &self.structures {
            let w = edge_sum(x, &s.edges);
            if w > t64 * s.half() {
                out.push(Violation::Structure {
                    vertices: s.vertices.clone(),
                    weight: w,
                    bound: t64 * s.half(),
                });
            }
        }
        Ok(out)
    }

    /// Number of lattice points of `t P_M(G)`.
    pub fn count(&self, t: u32, budget: &Budget) -> Result<u64> {
        self.count_metered(t, false, &budget.start("lattice-point count"))
    }

    pub(crate) fn count_metered(&self, t: u32, interior: bool, meter: &Meter) -> Result<u64> {
        self.lattice(t, interior).count(meter)
    }

    /// Number of lattice points in the interior of `t P_M(G)`.
    ///
    /// The description contains every facet and the polytope is
    /// full-dimensional, so interior points are those satisfying every
    /// inequality strictly. Substituting `x = 1 + y` turns them into the
    /// nonnegative points of a shifted system.
    pub fn count_interior(&self, t: u32, budget: &Budget) -> Result<u64> {
        self.count_metered(t, true, &budget.start("interior lattice-point count"))
    }

    /// All lattice points of `t P_M(G)` in lexicographic order. The budget's
    /// node limit caps the number of points produced.
    pub fn enumerate(&self, t: u32, budget: &Budget) -> Result<Vec<EdgeWeighting>> {
        let problem = self.lattice(t, false);
        let meter = budget.start("t-matching enumeration");
        let mut out = Vec::new();
        let mut x = vec![0u32; self.graph.edge_count()];
        let mut slack = problem.bounds.clone();
        if slack.iter().any(|&b| b < 0) {
            return Ok(out);
        }
        if !problem.enumerate(0, &mut x, &mut slack, &meter, &mut |x| {
            out.push(EdgeWeighting::new(x.to_vec(), t))
        }) {
            return Err(meter.exceeded());
        }
        Ok(out)
    }

    fn lattice(&self, t: u32, interior: bool) -> Lattice {
        let g = &self.graph;
        let t = t as i64;
        let shift = interior as i64;
        let mut constraints: Vec<(Vec<EdgeIndex>, i64)> = Vec::new();
        for u in 0..g.vertex_count() {
            let inc = g.incident_edges(u);
            if !inc.is_empty() {
                constraints.push((inc.to_vec(), t - shift * (1 + inc.len() as i64)));
            }
        }
        for s in &self.structures {
            let bound = t * s.half() as i64 - shift * (1 + s.edges.len() as i64);
            constraints.push((s.edges.clone(), bound));
        }
        Lattice::new(g.edge_count(), constraints)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Vertex {
        vertex: Vertex,
        weight: u64,
        bound: u64,
    },
    Structure {
        vertices: Vec<Vertex>,
        weight: u64,
        bound: u64,
    },
}

/// `{ y >= 0 integer : sum over each constraint's edges <= its bound }`,
/// searched depth-first in edge order.
struct Lattice {
    edge_count: usize,
    bounds: Vec<i64>,
    /// Constraint ids containing each edge.
    members: Vec<Vec<usize>>,
}

impl Lattice {
    fn new(edge_count: usize, constraints: Vec<(Vec<EdgeIndex>, i64)>) -> Self {
        let mut members = vec![Vec::new(); edge_count];
        let mut bounds = Vec::with_capacity(constraints.len());
        for (id, (edges, bound)) in constraints.into_iter().enumerate() {
            for e in edges {
                members[e].push(id);
            }
            bounds.push(bound);
        }
        Lattice {
            edge_count,
            bounds,
            members,
        }
    }

    fn room(&self, e: EdgeIndex, slack: &[i64]) -> i64 {
        self.members[e].iter().map(|&c| slack[c]).min().unwrap_or(0)
    }

    fn count(&self, meter: &Meter) -> Result<u64> {
        if self.bounds.iter().any(|&b| b < 0) {
            return Ok(0);
        }
        if self.edge_count == 0 {
            return Ok(1);
        }
        let slack = self.bounds.clone();
        self.count_split(slack, meter).ok_or_else(|| meter.exceeded())
    }

    #[cfg(feature = "parallel")]
    fn count_split(&self, slack: Vec<i64>, meter: &Meter) -> Option<u64> {
        use rayon::prelude::*;
        if self.edge_count < 4 {
            let mut slack = slack;
            return self.count_from(0, &mut slack, meter);
        }
        let top = self.room(0, &slack);
        (0..=top)
            .into_par_iter()
            .map(|v| {
                let mut s = slack.clone();
                for &c in &self.members[0] {
                    s[c] -= v;
                }
                self.count_from(1, &mut s, meter)
            })
            .try_reduce(|| 0, |a, b| Some(a + b))
    }

    #[cfg(not(feature = "parallel"))]
    fn count_split(&self, slack: Vec<i64>, meter: &Meter) -> Option<u64> {
        let mut slack = slack;
        self.count_from(0, &mut slack, meter)
    }

    fn count_from(&self, e: EdgeIndex, slack: &mut [i64], meter: &Meter) -> Option<u64> {
        if !meter.tick(1) {
            return None;
        }
        let remaining = self.edge_count - e;
        if remaining == 0 {
            return Some(1);
        }
        let top = self.room(e, slack);
        if remaining == 1 {
            return Some(top as u64 + 1);
        }
        if remaining == 2 {
            return Some(self.count_last_pair(e, top, slack));
        }
        let mut total = 0u64;
        for v in 0..=top {
            total += self.count_from(e + 1, slack, meter)?;
            if v < top {
                for &c in &self.members[e] {
                    slack[c] -= 1;
                }
            }
        }
        for &c in &self.members[e] {
            slack[c] += top;
        }
        Some(total)
    }

    // Edges e, e+1 are the last two: for each value a of x(e), x(e+1) ranges
    // over 0..=min slack of its constraints after charging a to the shared ones.
    fn count_last_pair(&self, e: EdgeIndex, top: i64, slack: &[i64]) -> u64 {
        let second = &self.members[e + 1];
        let first = &self.members[e];
        let mut total = 0u64;
        for a in 0..=top {
            let b = second
                .iter()
                .map(|c| slack[*c] - if first.contains(c) { a } else { 0 })
                .min()
                .unwrap_or(0);
            total += b as u64 + 1;
        }
        total
    }

    fn enumerate(
        &self,
        e: EdgeIndex,
        x: &mut [u32],
        slack: &mut [i64],
        meter: &Meter,
        visit: &mut dyn FnMut(&[u32]),
    ) -> bool {
        if e == self.edge_count {
            if !meter.tick(1) {
                return false;
            }
            visit(x);
            return true;
        }
        let top = self.room(e, slack);
        for v in 0..=top {
            x[e] = v as u32;
            if !self.enumerate(e + 1, x, slack, meter, visit) {
                x[e] = 0;
                return false;
            }
            if v < top {
                for &c in &self.members[e] {
                    slack[c] -= 1;
                }
            }
        }
        for &c in &self.members[e] {
            slack[c] += top;
        }
        x[e] = 0;
        true
    }
}

pub fn inequality_system(g: &Graph) -> Result<InequalitySystem> {
    Ok(MatchingPolytope::new(g)?.inequality_system())
}

pub fn is_t_matching(g: &Graph, x: &EdgeWeighting, t: u32) -> Result<bool> {
    MatchingPolytope::new(g)?.is_t_matching(&x.weights, t)
}

/// A 0/1 weighting whose chosen edges are pairwise disjoint.
pub fn is_matching(g: &Graph, x: &[u32]) -> bool {
    if x.len() != g.edge_count() || x.iter().any(|&w| w > 1) {
        return false;
    }
    (0..g.vertex_count()).all(|u| vertex_weight(g, x, u) <= 1)
}

/// All matchings, the empty one included, in lexicographic order.
pub fn enumerate_matchings(g: &Graph) -> Result<Vec<EdgeWeighting>> {
    // At level 1 the vertex bounds already force a matching: every odd
    // structure constraint is implied, so none are needed here.
    MatchingPolytope::from_parts(g.clone(), Vec::new()).enumerate(1, &Budget::unlimited())
}

pub fn enumerate_t_matchings(g: &Graph, t: u32, budget: &Budget) -> Result<Vec<EdgeWeighting>> {
    MatchingPolytope::new(g)?.enumerate(t, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureIndex {
    pub vertices: Vec<Vertex>,
    /// `x(U)`.
    pub weight: u64,
    /// `I(U)`.
    pub index: i64,
    pub tight: bool,
    pub full_index: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightAnalysis {
    pub level: u32,
    /// The analysed weighting.
    pub weights: Vec<u32>,
    pub vertex_weights: Vec<u64>,
    pub structures: Vec<StructureIndex>,
    pub tight_vertices: Vec<Vertex>,
    /// Some edge has weight 0.
    pub degenerate: bool,
    /// `E(G[x])`: the edges of positive weight.
    pub support: Vec<EdgeIndex>,
}

impl WeightAnalysis {
    pub fn tight_structures(&self) -> impl Iterator<Item = &StructureIndex> {
        self.structures.iter().filter(|s| s.tight)
    }

    pub fn is_tight_vertex(&self, u: Vertex) -> bool {
        self.vertex_weights[u] == self.level as u64
    }
}

/// `I(U)` for a vertex set with induced edges `edges`: `x(U) - (t-1)(|U|-1)/2`
/// when `|U|` is odd and `x(U) - (t-1)|U|/2` when even.
pub fn structure_index(x: &[u32], t: u32, size: usize, edges: &[EdgeIndex]) -> i64 {
    let weight = edge_sum(x, edges) as i64;
    let base = if size % 2 == 1 {
        (size as i64 - 1) / 2
    } else {
        size as i64 / 2
    };
    weight - (t as i64 - 1) * base
}

impl MatchingPolytope {
    pub fn analyze(&self, x: &[u32], t: u32) -> Result<WeightAnalysis> {
        if !self.is_t_matching(x, t)? {
            return Err(Error::input(format!("weighting is not a {t}-matching")));
        }
        let g = &self.graph;
        let vertex_weights: Vec<u64> = (0..g.vertex_count()).map(|u| vertex_weight(g, x, u)).collect();
        let structures = self
            .structures
            .iter()
            .map(|s| {
                let index = structure_index(x, t, s.size(), &s.edges);
                StructureIndex {
                    vertices: s.vertices.clone(),
                    weight: edge_sum(x, &s.edges),
                    index,
                    tight: index > 0,
                    full_index: index == s.half() as i64,
                }
            })
            .collect();
        let tight_vertices = (0..g.vertex_count())
            .filter(|&u| vertex_weights[u] == t as u64)
            .collect();
        Ok(WeightAnalysis {
            level: t,
            weights: x.to_vec(),
            vertex_weights,
            structures,
            tight_vertices,
            degenerate: x.contains(&0),
            support: (0..x.len()).filter(|&e| x[e] > 0).collect(),
        })
    }
}

pub fn analyze(g: &Graph, x: &EdgeWeighting, t: u32) -> Result<WeightAnalysis> {
    MatchingPolytope::new(g)?.analyze(&x.weights, t)
}

/// `G[x]`: same vertices, only the edges of positive weight. Returns the
/// support graph and the host index of each of its edges.
pub fn support_graph(g: &Graph, x: &[u32]) -> (Graph, Vec<EdgeIndex>) {
    let keep: Vec<EdgeIndex> = (0..x.len()).filter(|&e| x[e] > 0).collect();
    g.edge_subgraph(&keep)
}
