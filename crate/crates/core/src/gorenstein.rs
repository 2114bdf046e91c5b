//! Gorenstein matching polytopes.
//!
//! `P_M(G)` of a connected graph is Gorenstein exactly when there is a
//! `δ` with
//!
//! * (C1) every essential vertex has degree `δ`, and
//! * (C2) every odd structure `H` has `|E(H)| = (δ + 1)(|H| - 1)/2 - 1`.
//!
//! The index is then `k = δ + 1`, witnessed by the all-ones point of
//! `k P_M(G)`, which sits at height one over every facet. Structurally,
//! the Gorenstein graphs are the bipartite graphs with constant essential
//! degree (class a), `C5` (class b), and the graphs with all essential
//! degrees 3 whose blocks are bipartite, `K3`, `K4`, `K_{1,1,2}` or `C'5`
//! (class c).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{blocks, is_bipartite, make_family, Family, Graph, Vertex};
use crate::polytope::MatchingPolytope;
use crate::structures::OddStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GorensteinClass {
    TypeA,
    TypeB,
    TypeC,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two essential vertices of different degree, violating (C1).
    DegreeMismatch {
        first: Vertex,
        first_degree: usize,
        second: Vertex,
        second_degree: usize,
    },
    /// An odd structure violating (C2). `required` is the edge count (C2)
    /// demands, absent when no positive integer `δ` fits this structure.
    Structure {
        vertices: Vec<Vertex>,
        edge_count: usize,
        required: Option<usize>,
    },
    /// An essential vertex whose degree rules out every class.
    EssentialDegree { vertex: Vertex, degree: usize },
    /// A block that is not one of the allowed templates.
    Block { vertices: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub verdict: bool,
    pub class: GorensteinClass,
    /// Common essential degree; absent when the verdict is negative.
    pub delta: Option<usize>,
    /// Gorenstein index `δ + 1`; absent when the verdict is negative.
    pub index_k: Option<usize>,
    pub witness: Option<Witness>,
}

impl GorensteinReport {
    fn positive(class: GorensteinClass, delta: usize) -> Self {
        GorensteinReport {
            verdict: true,
            class,
            delta: Some(delta),
            index_k: Some(delta + 1),
            witness: None,
        }
    }

    fn negative(witness: Witness) -> Self {
        GorensteinReport {
            verdict: false,
            class: GorensteinClass::None,
            delta: None,
            index_k: None,
            witness: Some(witness),
        }
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::input("Gorenstein analysis needs a connected graph"))
    }
}

/// (C2) for one structure at a given `δ`.
fn required_edges(delta: usize, s: &OddStructure) -> usize {
    ((delta + 1) * (s.size() - 1) / 2).saturating_sub(1)
}

/// The `δ` that makes (C2) hold with equality for `s`, if it is a positive
/// integer: `δ + 1 = 2 (|E(H)| + 1) / (|H| - 1)`.
fn solve_delta(s: &OddStructure) -> Option<usize> {
    let num = 2 * (s.edges.len() + 1);
    let den = s.size() - 1;
    (num.is_multiple_of(den) && num / den >= 2).then(|| num / den - 1)
}

pub fn check_conditions(g: &Graph) -> Result<GorensteinReport> {
    require_connected(g)?;
    check_conditions_with(&MatchingPolytope::new(g)?)
}

/// (C1) and (C2) against a precomputed polytope. The class is taken from
/// [`classify_structure`] when the conditions hold.
///
/// With neither essential vertices nor odd structures (only the one-vertex
/// graph) the polytope is a point, reported with `δ = 0`, matching the
/// index relation `k = |E| + 1 - deg h*`.
pub fn check_conditions_with(p: &MatchingPolytope) -> Result<GorensteinReport> {
    let g = p.graph();
    require_connected(g)?;
    let essential = p.essential();
    let structures = p.structures();
    let delta = if let Some(&first) = essential.first() {
        let d = g.degree(first);
        if let Some(&other) = essential.iter().find(|&&u| g.degree(u) != d) {
            return Ok(GorensteinReport::negative(Witness::DegreeMismatch {
                first,
                first_degree: d,
                second: other,
                second_degree: g.degree(other),
            }));
        }
        d
    } else if let Some(s) = structures.first() {
        match solve_delta(s) {
            Some(d) => d,
            None => {
                return Ok(GorensteinReport::negative(Witness::Structure {
                    vertices: s.vertices.clone(),
                    edge_count: s.edges.len(),
                    required: None,
                }))
            }
        }
    } else {
        0
    };
    if let Some(s) = structures.iter().find(|s| s.edges.len() != required_edges(delta, s)) {
        return Ok(GorensteinReport::negative(Witness::Structure {
            vertices: s.vertices.clone(),
            edge_count: s.edges.len(),
            required: Some(required_edges(delta, s)),
        }));
    }
    let class = classify_structure(g)?.class;
    Ok(GorensteinReport {
        verdict: true,
        class,
        delta: Some(delta),
        index_k: Some(delta + 1),
        witness: None,
    })
}

struct Templates {
    k3: Graph,
    k4: Graph,
    k112: Graph,
    chortling: Graph,
    c5: Graph,
}

impl Templates {
    fn new() -> Self {
        let mk = |f: Family| make_family(&f).expect("fixed template parameters are valid");
        Templates {
            k3: mk(Family::Cycle(3)),
            k4: mk(Family::CompleteMultipartite(vec![1, 1, 1, 1])),
            k112: mk(Family::CompleteMultipartite(vec![1, 1, 2])),
            chortling: mk(Family::ChortlingC5),
            c5: mk(Family::Cycle(5)),
        }
    }

    fn allowed_block(&self, b: &Graph) -> bool {
        is_bipartite(b).is_bipartite()
            || [&self.k3, &self.k4, &self.k112, &self.chortling]
                .iter()
                .any(|t| b.is_isomorphic_small(t))
    }
}

/// Class membership by the structural characterization alone.
pub fn classify_structure(g: &Graph) -> Result<GorensteinReport> {
    require_connected(g)?;
    let essential = crate::graph::essential_vertices(g);
    let degree_of_first = essential.first().map(|&u| g.degree(u));
    if let Some(d) = degree_of_first {
        if let Some(&other) = essential.iter().find(|&&u| g.degree(u) != d) {
            return Ok(GorensteinReport::negative(Witness::DegreeMismatch {
                first: essential[0],
                first_degree: d,
                second: other,
                second_degree: g.degree(other),
            }));
        }
    }
    if is_bipartite(g).is_bipartite() {
        return Ok(GorensteinReport::positive(
            GorensteinClass::TypeA,
            degree_of_first.unwrap_or(0),
        ));
    }
    let templates = Templates::new();
    if g.is_isomorphic_small(&templates.c5) {
        return Ok(GorensteinReport::positive(GorensteinClass::TypeB, 2));
    }
    if let Some(&u) = essential.iter().find(|&&u| g.degree(u) != 3) {
        return Ok(GorensteinReport::negative(Witness::EssentialDegree {
            vertex: u,
            degree: g.degree(u),
        }));
    }
    for b in blocks(g).blocks {
        let (sub, _) = g.induced_subgraph(&b.vertices);
        if !templates.allowed_block(&sub) {
            return Ok(GorensteinReport::negative(Witness::Block { vertices: b.vertices }));
        }
    }
    Ok(GorensteinReport::positive(GorensteinClass::TypeC, 3))
}

/// The all-ones point lies in `k P_M(G)` at height one over every facet:
/// `deg(u) = k - 1` at each essential vertex and
/// `|E(H)| = k (|H| - 1)/2 - 1` for each odd structure.
pub fn verify_lattice_witness(g: &Graph, k: usize) -> Result<bool> {
    Ok(verify_lattice_witness_with(&MatchingPolytope::new(g)?, k))
}

pub fn verify_lattice_witness_with(p: &MatchingPolytope, k: usize) -> bool {
    let g = p.graph();
    let ones = vec![1u32; g.edge_count()];
    let inside = k <= u32::MAX as usize && p.admits(&ones, k as u32);
    inside
        && p.essential().iter().all(|&u| g.degree(u) + 1 == k)
        && p.structures()
            .iter()
            .all(|s| s.edges.len() + 1 == k * (s.size() - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(f: Family) -> Graph {
        make_family(&f).unwrap()
    }

    fn with_pendant(g: &Graph, at: Vertex) -> Graph {
        let n = g.vertex_count();
        Graph::new(n + 1, g.edges().iter().copied().chain([(at, n)])).unwrap()
    }

    #[test]
    fn c5_is_type_b() {
        let r = check_conditions(&fam(Family::Cycle(5))).unwrap();
        assert!(r.verdict);
        assert_eq!(
            (r.class, r.delta, r.index_k),
            (GorensteinClass::TypeB, Some(2), Some(3))
        );
    }

    #[test]
    fn c7_fails_c2() {
        let r = check_conditions(&fam(Family::Cycle(7))).unwrap();
        assert!(!r.verdict);
        assert_eq!(
            r.witness,
            Some(Witness::Structure {
                vertices: (0..7).collect(),
                edge_count: 7,
                required: Some(8)
            })
        );
    }

    #[test]
    fn w6_fails_c1() {
        let r = check_conditions(&fam(Family::Wheel(6))).unwrap();
        assert!(!r.verdict);
        assert_eq!(
            r.witness,
            Some(Witness::DegreeMismatch {
                first: 0,
                first_degree: 3,
                second: 5,
                second_degree: 5
            })
        );
    }

    #[test]
    fn structural_examples() {
        let k4 = classify_structure(&fam(Family::CompleteMultipartite(vec![1, 1, 1, 1]))).unwrap();
        assert_eq!((k4.class, k4.index_k), (GorensteinClass::TypeC, Some(4)));
        let c5p = fam(Family::ChortlingC5);
        let alone = classify_structure(&c5p).unwrap();
        assert_eq!(alone.class, GorensteinClass::None);
        assert_eq!(
            alone.witness,
            Some(Witness::DegreeMismatch {
                first: 0,
                first_degree: 2,
                second: 1,
                second_degree: 3
            })
        );
        let pendant = classify_structure(&with_pendant(&c5p, 0)).unwrap();
        assert_eq!(pendant.class, GorensteinClass::TypeC);
        let pendant_c = check_conditions(&with_pendant(&c5p, 0)).unwrap();
        assert!(pendant_c.verdict);
        assert_eq!(pendant_c.delta, Some(3));
    }

    #[test]
    fn triangle_solves_delta_from_its_structure() {
        let r = check_conditions(&fam(Family::Cycle(3))).unwrap();
        assert_eq!((r.verdict, r.class, r.delta), (true, GorensteinClass::TypeC, Some(3)));
    }

    #[test]
    fn single_vertex_is_a_point() {
        let r = check_conditions(&Graph::empty(1)).unwrap();
        assert_eq!(
            (r.verdict, r.class, r.delta, r.index_k),
            (true, GorensteinClass::TypeA, Some(0), Some(1))
        );
    }

    #[test]
    fn lattice_witness_examples() {
        let c5 = fam(Family::Cycle(5));
        assert!(verify_lattice_witness(&c5, 3).unwrap());
        assert!(!verify_lattice_witness(&c5, 2).unwrap());
        let k4 = fam(Family::CompleteMultipartite(vec![1, 1, 1, 1]));
        assert!(verify_lattice_witness(&k4, 4).unwrap());
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(check_conditions(&g), Err(Error::Input(_))));
        assert!(matches!(classify_structure(&g), Err(Error::Input(_))));
    }
}
