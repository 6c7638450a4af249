//! `czl`: cone catalog, identity and functional-equation checks, graph pipeline.

use clap::{Args, Parser, Subcommand};
use conezeta::cone::graph::build_structure_from_graph;
use conezeta::report::checks::{gindikin, load_cone, load_graph, parse_points, run_check, CheckParams};
use conezeta::report::describe::{describe, list_cones};
use conezeta::report::{run_suite, RunDocument, SCHEMA_VERSION};
use conezeta::zeta::{QuadratureSpec, Scheme};
use conezeta::Error;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "czl", version, about = "Local zeta functions of homogeneous cones: checks and reports")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Gauss nodes per chart axis; also sets the starting double-exponential level.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Use Monte Carlo with this many samples for chart integrals.
    #[arg(long = "mc-samples", global = true)]
    mc_samples: Option<usize>,
    /// Seed for random points and sampling.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Replaces the tolerance of every report.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog cones with rank, dimension and completion condition.
    ListCones,
    /// Structure constants, multipliers, orders and the reversal verdict.
    Describe { cone: String },
    /// Runs one named check.
    Check(CheckArgs),
    /// Calibrates the measure constant by the Gindikin integral.
    Calibrate {
        #[arg(long)]
        cone: String,
        /// Number of validation points.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Structure constants of the cone attached to a chordal, A4-free graph.
    Graph {
        /// Graph JSON file or inline JSON `{"vertices": n, "edges": [[i, j], ...]}`.
        #[arg(long)]
        graph: String,
    },
    /// Runs a named suite (`desk`).
    Suite { name: String },
}

#[derive(Args)]
struct CheckArgs {
    /// One of lemma-diag, gamma-identity, half-gamma, gindikin, det-conjecture,
    /// multiplier, fe-raw, fe-completed, fe-distribution, graph.
    check_id: String,
    /// Catalog name or cone JSON path.
    #[arg(long)]
    cone: Option<String>,
    /// `auto-strip` or points like `0.5+2i` and `1.2,0.7;1.4,0.6`.
    #[arg(long, default_value = "auto-strip")]
    s: String,
    /// `gaussian` or `hermite:k1,k2,...`.
    #[arg(long, default_value = "gaussian")]
    f: String,
    /// Rank for lemma-diag.
    #[arg(long)]
    r: Option<usize>,
    /// Random trials (or validation points).
    #[arg(long)]
    trials: Option<usize>,
    /// Graph JSON file or inline JSON for the graph check.
    #[arg(long)]
    graph: Option<String>,
    /// Number of auto-strip points, the midpoint included.
    #[arg(long, default_value_t = 3)]
    points: usize,
}

fn quadrature(g: &Global) -> QuadratureSpec {
    let mut q = QuadratureSpec { seed: g.seed, ..Default::default() };
    if let Some(n) = g.nodes {
        q.nodes_per_axis = n;
    }
    if let Some(m) = g.mc_samples {
        q.scheme = Scheme::MonteCarlo;
        q.mc_samples = m;
    }
    q
}

/// The JSON document to emit and whether every check passed.
type Outcome = (serde_json::Value, bool);

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    let quad = quadrature(g);
    match &cli.command {
        Command::ListCones => Ok((list_cones()?, true)),
        Command::Describe { cone } => Ok((describe(&load_cone(cone)?)?, true)),
        Command::Check(a) => {
            let params = CheckParams {
                cone: a.cone.clone(),
                points: parse_points(&a.s)?,
                f: a.f.clone(),
                quad,
                tol: g.tol,
                r: a.r,
                trials: a.trials,
                graph: a.graph.clone(),
                strip_points: a.points,
            };
            let d = RunDocument::new(&format!("check {}", a.check_id), run_check(&a.check_id, &params)?);
            let pass = d.pass;
            Ok((serde_json::to_value(d).expect("serializable"), pass))
        }
        Command::Calibrate { cone, trials } => {
            let mut rep = gindikin(&load_cone(cone)?, *trials, &quad)?.1;
            if let Some(t) = g.tol {
                rep = rep.with_tolerance(t);
            }
            let d = RunDocument::new("calibrate", vec![rep]);
            let pass = d.pass;
            Ok((serde_json::to_value(d).expect("serializable"), pass))
        }
        Command::Graph { graph } => {
            let input = load_graph(graph)?;
            let gs = build_structure_from_graph(&input.adjacency()?)?;
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "graph": input,
                    "order": gs.order,
                    "structure_constants": gs.structure.blocks().iter().map(|(k, j, n)| json!({ "k": k + 1, "j": j + 1, "n": n })).collect::<Vec<_>>(),
                    "p": gs.structure.p,
                    "q": gs.structure.q,
                    "d": gs.structure.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "m": gs.m.map(|m| json!(m)).unwrap_or(json!("fails")),
                }),
                true,
            ))
        }
        Command::Suite { name } => {
            let mut d = run_suite(name, &quad)?;
            if let Some(t) = g.tol {
                d = RunDocument::new(&d.command, d.reports.into_iter().map(|r| r.with_tolerance(t)).collect());
            }
            let pass = d.pass;
            Ok((serde_json::to_value(d).expect("serializable"), pass))
        }
    }
}

fn open_out(path: &str) -> Result<std::fs::File, Error> {
    std::fs::File::create(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn emit(value: &serde_json::Value, out: Option<(&str, std::fs::File)>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some((path, mut file)) => file.write_all(text.as_bytes()).map_err(|e| Error::Io(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    let body = json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": e.kind(), "message": e.to_string() } });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            return fail(&Error::Input(format!("cannot start {n} worker threads")));
        }
    }
    // open the output first so an unwritable path fails before any computation
    let out = match cli.global.out.as_deref() {
        Some(path) => match open_out(path) {
            Ok(file) => Some((path, file)),
            Err(e) => return fail(&e),
        },
        None => None,
    };
    match run(&cli) {
        Ok((value, pass)) => match emit(&value, out) {
            Ok(()) => {
                if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}
