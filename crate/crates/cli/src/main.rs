//! `matchpoly`: analysis, h*-vectors, IDP certification and t-matching
//! splits for matching polytopes of small graphs.
//!
//! Exit codes: 0 success or certified, 1 mathematical negative, 2 input
//! error, 3 resource limit exceeded, 4 internal error.

mod report;
mod source;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use matchpoly::ehrhart::{hstar_with, EhrhartOptions};
use matchpoly::gorenstein::classify_structure;
use matchpoly::graph::{blocks, essential_vertices, is_bipartite, Graph};
use matchpoly::idp::{default_t_max, idp_check_with, split_any_with, verify_decomposition};
use matchpoly::polytope::{EdgeWeighting, MatchingPolytope};
use matchpoly::{Budget, Error, Result};
use serde::Serialize;

use report::{AnalysisReport, ComponentReport, GraphSummary, HStarSummary, SplitReport, Status};
use source::{GraphSource, WeightSource};

#[derive(Debug, Parser)]
#[command(name = "matchpoly", version, about = "Matching polytopes of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Wall-clock limit in seconds for each exponential computation.
    #[arg(
        long,
        global = true,
        env = "MATCHPOLY_BUDGET",
        default_value_t = 600,
        value_name = "SECONDS"
    )]
    budget: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print elapsed wall-clock time to stderr.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graph summary and Gorenstein verdict, optionally with h* and IDP.
    Analyze(AnalyzeArgs),
    /// The h*-vector of the matching polytope.
    Hstar(HStarArgs),
    /// Certify that every t-matching splits, for 2 <= t <= T.
    Idp(IdpArgs),
    /// Write a t-matching as a sum of t matchings.
    Split(SplitArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Also compute the h*-vector.
    #[arg(long)]
    hstar: bool,
    /// Also run the IDP check.
    #[arg(long)]
    idp: bool,
    /// Largest level for the IDP check; defaults to min(|E| - 1, 4).
    #[arg(long, value_name = "T")]
    tmax: Option<u32>,
}

#[derive(Debug, Args)]
struct HStarArgs {
    #[command(flatten)]
    source: GraphSource,
}

#[derive(Debug, Args)]
struct IdpArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Largest level to check; defaults to min(|E| - 1, 4).
    #[arg(long, value_name = "T")]
    tmax: Option<u32>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    weights: WeightSource,
    /// The level t of the weighting.
    #[arg(long)]
    t: u32,
}

/// What a subcommand prints, and with which exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn new(text: String, json: &impl Serialize, code: u8) -> Self {
        let json = serde_json::to_value(json).expect("reports serialize");
        Outcome { text, json, code }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Resource(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::seconds(cli.budget);
    let start = Instant::now();
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args, cli.budget, &budget),
        Command::Hstar(args) => hstar(args, &budget),
        Command::Idp(args) => idp(args, &budget),
        Command::Split(args) => split(args, &budget),
    };
    if cli.timings {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json"));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// `Ok(None)` when the budget ran out, with the limit recorded in `report`.
fn within_budget<T>(r: Result<T>, report: &mut AnalysisReport) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Resource(e)) => {
            report.status = Status::ResourceExceeded;
            report.resource.get_or_insert(e);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn analyze(args: &AnalyzeArgs, budget_seconds: u64, budget: &Budget) -> Result<Outcome> {
    let (g, name) = args.source.load()?;
    let connected = g.is_connected();
    let components = if connected { Vec::new() } else { component_reports(&g)? };
    let mut report = AnalysisReport {
        graph: GraphSummary::new(&g, name),
        bipartite: is_bipartite(&g).is_bipartite(),
        blocks: blocks(&g),
        essential_vertices: essential_vertices(&g),
        gorenstein: if connected { Some(classify_structure(&g)?) } else { None },
        components,
        hstar: None,
        idp: None,
        budget_seconds,
        status: Status::Complete,
        resource: None,
    };
    if args.hstar {
        let h = within_budget(compute_hstar(&g, budget), &mut report)?;
        report.hstar = h.map(HStarSummary::new);
    }
    if args.idp {
        let t_max = args.tmax.unwrap_or_else(|| default_t_max(&g));
        report.idp = within_budget(idp_check_with(&g, t_max, budget), &mut report)?;
    }
    let code = match report.status {
        Status::Complete => 0,
        Status::ResourceExceeded => 3,
    };
    Ok(Outcome::new(report.render(&g), &report, code))
}

fn component_reports(g: &Graph) -> Result<Vec<ComponentReport>> {
    let mut out = Vec::new();
    for vertices in g.components() {
        let (sub, _) = g.induced_subgraph(&vertices);
        if sub.edge_count() == 0 {
            continue;
        }
        out.push(ComponentReport {
            gorenstein: classify_structure(&sub)?,
            vertices,
        });
    }
    Ok(out)
}

fn compute_hstar(g: &Graph, budget: &Budget) -> Result<matchpoly::ehrhart::HStarVector> {
    let p = MatchingPolytope::new(g)?;
    let options = EhrhartOptions {
        budget: *budget,
        ..EhrhartOptions::default()
    };
    hstar_with(&p, &options)
}

fn hstar(args: &HStarArgs, budget: &Budget) -> Result<Outcome> {
    let (g, _) = args.source.load()?;
    let summary = HStarSummary::new(compute_hstar(&g, budget)?);
    Ok(Outcome::new(format!("{summary}\n"), &summary, 0))
}

fn idp(args: &IdpArgs, budget: &Budget) -> Result<Outcome> {
    let (g, _) = args.source.load()?;
    let t_max = args.tmax.unwrap_or_else(|| default_t_max(&g));
    let r = idp_check_with(&g, t_max, budget)?;
    let code = if r.certified { 0 } else { 1 };
    Ok(Outcome::new(format!("{}\n", report::idp_line(&r, &g)), &r, code))
}

fn split(args: &SplitArgs, budget: &Budget) -> Result<Outcome> {
    let (g, name) = args.source.load()?;
    let weights = args.weights.load(&g)?;
    let t = args.t;
    if t == 0 {
        return Err(Error::Input("t must be at least 1".into()));
    }
    let violations = MatchingPolytope::new(&g)?.violations(&weights, t)?;
    let mut report = SplitReport {
        graph: GraphSummary::new(&g, name),
        t,
        weights: weights.clone(),
        t_matching: violations.is_empty(),
        violations,
        splits: false,
        result: None,
    };
    if report.t_matching {
        let r = split_any_with(&g, &EdgeWeighting::new(weights.clone(), t), t, budget)?;
        if let Some(r) = &r {
            if !verify_decomposition(&g, &weights, t, &r.parts) {
                return Err(Error::Internal("decomposition failed to re-verify".into()));
            }
        }
        report.splits = r.is_some();
        report.result = r;
    }
    let code = if report.splits { 0 } else { 1 };
    Ok(Outcome::new(report.render(&g), &report, code))
}
