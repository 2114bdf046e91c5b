//! Browser bindings: analyse a built-in graph, check a weighting, and split
//! a t-matching into matchings.
//!
//! Every binding returns a JSON string. The `*_json` functions are the
//! native entry points the bindings wrap, so the logic is testable without
//! a browser. Budgets count search nodes because `wasm32-unknown-unknown`
//! has no clock.

use matchpoly::ehrhart::{hstar_with, EhrhartOptions};
use matchpoly::gorenstein::{classify_structure, GorensteinReport};
use matchpoly::graph::{make_family, Family, Graph, Vertex};
use matchpoly::idp::{split_any_with, verify_decomposition, SplitResult};
use matchpoly::polytope::{EdgeWeighting, MatchingPolytope, Violation};
use matchpoly::{Budget, Error, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Node limit for one h* computation.
pub const HSTAR_NODES: u64 = 1 << 28;
/// Node limit for one split.
pub const SPLIT_NODES: u64 = 1 << 24;

/// `kind` is one of `wheel`, `cycle`, `path`, `chortling_c5` or
/// `chorded_c5`; `n` is ignored by the last two.
pub fn family_graph(kind: &str, n: usize) -> Result<(Family, Graph)> {
    let family = match kind {
        "wheel" => Family::Wheel(n),
        "cycle" => Family::Cycle(n),
        "path" => Family::Path(n),
        "chortling_c5" => Family::ChortlingC5,
        "chorded_c5" => Family::ChordedC5,
        other => return Err(Error::Input(format!("unknown family {other:?}"))),
    };
    let g = make_family(&family)?;
    Ok((family, g))
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub gorenstein: GorensteinReport,
    /// Absent when the node budget ran out.
    pub hstar: Option<Vec<String>>,
    pub unimodal: Option<bool>,
    pub palindromic: Option<bool>,
}

pub fn analyze_json(kind: &str, n: usize) -> Result<String> {
    let (family, g) = family_graph(kind, n)?;
    let options = EhrhartOptions {
        budget: Budget::nodes(HSTAR_NODES),
        ..EhrhartOptions::default()
    };
    let h = match hstar_with(&MatchingPolytope::new(&g)?, &options) {
        Ok(h) => Some(h),
        Err(Error::Resource(_)) => None,
        Err(e) => return Err(e),
    };
    let analysis = Analysis {
        name: family.to_string(),
        vertices: g.vertex_count(),
        edges: g.edges().to_vec(),
        gorenstein: classify_structure(&g)?,
        unimodal: h.as_ref().map(|h| h.is_unimodal()),
        palindromic: h.as_ref().map(|h| h.is_palindromic()),
        hstar: h.map(|h| h.coefficients.iter().map(ToString::to_string).collect()),
    };
    Ok(serde_json::to_string(&analysis).expect("serializable"))
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub t_matching: bool,
    pub violations: Vec<Violation>,
}

fn checked_weights(g: &Graph, weights: &[u32], t: u32) -> Result<Vec<Violation>> {
    if weights.len() != g.edge_count() {
        return Err(Error::Input(format!(
            "expected {} weights, got {}",
            g.edge_count(),
            weights.len()
        )));
    }
    if t == 0 {
        return Err(Error::Input("t must be at least 1".into()));
    }
    MatchingPolytope::new(g)?.violations(weights, t)
}

pub fn check_json(kind: &str, n: usize, weights: &[u32], t: u32) -> Result<String> {
    let (_, g) = family_graph(kind, n)?;
    let violations = checked_weights(&g, weights, t)?;
    let check = Check {
        t_matching: violations.is_empty(),
        violations,
    };
    Ok(serde_json::to_string(&check).expect("serializable"))
}

#[derive(Debug, Serialize)]
pub struct Split {
    pub t_matching: bool,
    pub violations: Vec<Violation>,
    /// Edge indices of each part, when the weighting splits.
    pub parts: Option<Vec<Vec<usize>>>,
    pub result: Option<SplitResult>,
}

pub fn split_json(kind: &str, n: usize, weights: &[u32], t: u32) -> Result<String> {
    let (_, g) = family_graph(kind, n)?;
    let violations = checked_weights(&g, weights, t)?;
    let mut split = Split {
        t_matching: violations.is_empty(),
        violations,
        parts: None,
        result: None,
    };
    if split.t_matching {
        let x = EdgeWeighting::new(weights.to_vec(), t);
        let r = split_any_with(&g, &x, t, &Budget::nodes(SPLIT_NODES))?;
        if let Some(r) = &r {
            if !verify_decomposition(&g, weights, t, &r.parts) {
                return Err(Error::Internal("decomposition failed to re-verify".into()));
            }
        }
        split.parts = r.as_ref().map(SplitResult::part_edges);
        split.result = r;
    }
    Ok(serde_json::to_string(&split).expect("serializable"))
}

fn to_js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Graph, Gorenstein verdict and h*-vector of a built-in family.
#[wasm_bindgen]
pub fn analyze(kind: &str, n: usize) -> std::result::Result<String, JsError> {
    to_js(analyze_json(kind, n))
}

/// The constraints `weights` breaks as a point of `t P_M(G)`.
#[wasm_bindgen]
pub fn check(kind: &str, n: usize, weights: Vec<u32>, t: u32) -> std::result::Result<String, JsError> {
    to_js(check_json(kind, n, &weights, t))
}

/// `weights` written as a sum of `t` matchings, with the rule trace.
#[wasm_bindgen]
pub fn split(kind: &str, n: usize, weights: Vec<u32>, t: u32) -> std::result::Result<String, JsError> {
    to_js(split_json(kind, n, &weights, t))
}
