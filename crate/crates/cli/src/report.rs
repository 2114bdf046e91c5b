//! Report types for every subcommand, with their text renderings.
//!
//! The JSON form of each report is its `Serialize` output. Field names and
//! nesting are part of the stable output schema.

use std::fmt::{self, Display, Write as _};

use matchpoly::ehrhart::HStarVector;
use matchpoly::gorenstein::{GorensteinReport, Witness};
use matchpoly::graph::{BlockDecomposition, Graph};
use matchpoly::idp::{IdpReport, SplitResult};
use matchpoly::polytope::Violation;
use matchpoly::{ResourceExceeded, Vertex};
use serde::Serialize;

/// The snake_case serde name of a unit enum variant.
pub fn variant_name<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn set(vertices: &[Vertex]) -> String {
    let items: Vec<String> = vertices.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn edge_set(g: &Graph, edges: &[usize]) -> String {
    let items: Vec<String> = edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            format!("{u}-{v}")
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    /// Canonical edge order: edge `i` of every weight vector is `edge_list[i]`.
    pub edge_list: Vec<(Vertex, Vertex)>,
    pub connected: bool,
}

impl GraphSummary {
    pub fn new(g: &Graph, name: String) -> Self {
        GraphSummary {
            name,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            edge_list: g.edges().to_vec(),
            connected: g.is_connected(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HStarSummary {
    #[serde(flatten)]
    pub hstar: HStarVector,
    pub degree: usize,
    pub unimodal: bool,
    pub palindromic: bool,
}

impl HStarSummary {
    pub fn new(h: HStarVector) -> Self {
        HStarSummary {
            degree: h.degree(),
            unimodal: h.is_unimodal(),
            palindromic: h.is_palindromic(),
            hstar: h,
        }
    }
}

impl Display for HStarSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.hstar)?;
        write!(f, "unimodal: {}, palindromic: {}", self.unimodal, self.palindromic)
    }
}

/// Gorenstein analysis of one connected component.
#[derive(Debug, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<Vertex>,
    pub gorenstein: GorensteinReport,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    ResourceExceeded,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub bipartite: bool,
    pub blocks: BlockDecomposition,
    pub essential_vertices: Vec<Vertex>,
    /// Present for connected graphs.
    pub gorenstein: Option<GorensteinReport>,
    /// One entry per component with an edge, for disconnected graphs.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentReport>,
    /// Present when requested and computed within the budget.
    pub hstar: Option<HStarSummary>,
    /// Present when requested and computed within the budget.
    pub idp: Option<IdpReport>,
    pub budget_seconds: u64,
    pub status: Status,
    pub resource: Option<ResourceExceeded>,
}

fn witness_line(w: &Witness) -> String {
    match w {
        Witness::DegreeMismatch {
            first,
            first_degree,
            second,
            second_degree,
        } => format!("essential vertices {first} (degree {first_degree}) and {second} (degree {second_degree}) differ"),
        Witness::Structure {
            vertices,
            edge_count,
            required: Some(r),
        } => format!("odd structure {} has {edge_count} edges, needs {r}", set(vertices)),
        Witness::Structure {
            vertices,
            edge_count,
            required: None,
        } => format!(
            "odd structure {} has {edge_count} edges, fitting no degree",
            set(vertices)
        ),
        Witness::EssentialDegree { vertex, degree } => {
            format!("essential vertex {vertex} has degree {degree}, fitting no class")
        }
        Witness::Block { vertices } => format!("block {} is not an allowed template", set(vertices)),
    }
}

fn gorenstein_lines(out: &mut String, indent: &str, r: &GorensteinReport) {
    let _ = write!(out, "{indent}gorenstein: {}", r.verdict);
    if r.verdict {
        let _ = write!(out, " (class {}", variant_name(&r.class));
        if let (Some(delta), Some(k)) = (r.delta, r.index_k) {
            let _ = write!(out, ", delta {delta}, index k = {k}");
        }
        out.push(')');
    }
    out.push('\n');
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "{indent}witness: {}", witness_line(w));
    }
}

pub fn idp_line(r: &IdpReport, g: &Graph) -> String {
    match &r.counterexample {
        None => format!("IDP certified for t ≤ {}", r.t_max),
        Some(x) => {
            let support: Vec<usize> = x.support();
            format!(
                "counterexample at t = {}: {:?} (support {})",
                x.level,
                x.weights,
                edge_set(g, &support)
            )
        }
    }
}

impl AnalysisReport {
    pub fn render(&self, g: &Graph) -> String {
        let mut out = String::new();
        let s = &self.graph;
        let _ = writeln!(out, "graph: {} ({} vertices, {} edges)", s.name, s.vertices, s.edges);
        let _ = writeln!(out, "connected: {}", s.connected);
        let _ = writeln!(out, "bipartite: {}", self.bipartite);
        let _ = writeln!(out, "blocks: {}", self.blocks.blocks.len());
        for b in &self.blocks.blocks {
            let _ = writeln!(out, "  {}", set(&b.vertices));
        }
        let cut = if self.blocks.cut_vertices.is_empty() {
            "none".to_string()
        } else {
            set(&self.blocks.cut_vertices)
        };
        let _ = writeln!(out, "cut vertices: {cut}");
        let _ = writeln!(out, "essential vertices: {}", set(&self.essential_vertices));
        if let Some(r) = &self.gorenstein {
            gorenstein_lines(&mut out, "", r);
        }
        for c in &self.components {
            let _ = writeln!(out, "component {}:", set(&c.vertices));
            gorenstein_lines(&mut out, "  ", &c.gorenstein);
        }
        if let Some(h) = &self.hstar {
            let _ = writeln!(out, "h*: {}", h.hstar);
            let _ = writeln!(out, "unimodal: {}, palindromic: {}", h.unimodal, h.palindromic);
        }
        if let Some(r) = &self.idp {
            let _ = writeln!(out, "{}", idp_line(r, g));
        }
        if let Some(e) = &self.resource {
            let _ = writeln!(out, "incomplete: {e}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SplitReport {
    pub graph: GraphSummary,
    pub t: u32,
    pub weights: Vec<u32>,
    pub t_matching: bool,
    /// Constraints the weighting breaks, when it is not a t-matching.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    /// `false` when search proved the t-matching is not a sum of `t`
    /// matchings.
    pub splits: bool,
    pub result: Option<SplitResult>,
}

fn violation_line(v: &Violation) -> String {
    match v {
        Violation::Vertex { vertex, weight, bound } => format!("vertex {vertex}: weight {weight} > {bound}"),
        Violation::Structure {
            vertices,
            weight,
            bound,
        } => {
            format!("odd structure {}: weight {weight} > {bound}", set(vertices))
        }
    }
}

impl SplitReport {
    pub fn render(&self, g: &Graph) -> String {
        let mut out = String::new();
        if !self.t_matching {
            let _ = writeln!(out, "not a {}-matching:", self.t);
            for v in &self.violations {
                let _ = writeln!(out, "  {}", violation_line(v));
            }
            return out;
        }
        let Some(r) = &self.result else {
            let _ = writeln!(out, "{:?} is not a sum of {} matchings", self.weights, self.t);
            return out;
        };
        let _ = writeln!(out, "{} matchings (method {})", r.parts.len(), variant_name(&r.method));
        for (i, edges) in r.part_edges().iter().enumerate() {
            let _ = writeln!(out, "  part {}: {}", i + 1, edge_set(g, edges));
        }
        if r.fallback_used {
            let _ = writeln!(out, "fallback search used");
        }
        let _ = writeln!(out, "trace:");
        for step in &r.trace {
            let _ = writeln!(
                out,
                "  t = {}, part {}: {} {}",
                step.level,
                step.part + 1,
                variant_name(&step.rule),
                edge_set(g, &step.edges)
            );
        }
        out
    }
}
