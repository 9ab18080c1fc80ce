//! `pdom`: generate fractal cubic networks and analyze power domination,
//! twin classes and resolving sets of graph files.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 limit exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdom::fcn::{self, FcnDimension, DEFAULT_MAX_DIMENSION};
use pdom::io::{self, GraphFormat};
use pdom::oracle::{self, Problem};
use pdom::powerdom::{self, DEFAULT_EXACT_LIMIT};
use pdom::report::{self, AnalysisOptions};
use pdom::{Error, Graph};

#[derive(Parser)]
#[command(
    name = "pdom",
    version,
    about = "Power domination and resolving sets on graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write FCN(d) as an edge list, JSON or DOT file.
    Generate {
        #[arg(long = "dim")]
        dim: u32,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Output path; the graph goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dim: u32,
    },
    /// Run the monitoring closure from a seed set.
    Monitor {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated seed labels.
        #[arg(long, default_value = "")]
        seeds: String,
        /// Print the propagation trace.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "text")]
        trace_format: TraceFormat,
    },
    /// Compute twin classes and bounds on γ_P, dim and η_P.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Comma-separated subset of twins, gamma-p, dim, eta-p, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the propagation trace of the γ_P certificate.
        #[arg(long)]
        with_traces: bool,
        /// Append exhaustive oracle results where the graph is small enough.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dim: u32,
    },
    /// Exhaustive search for gamma, gamma-p, dim or eta-p.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        /// Vertex-count limit; defaults to 24 (16 for eta-p).
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Graph file (`.json` or edge list).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generate FCN(d) instead of reading a file.
    #[arg(long = "dim")]
    dim: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::LimitExceeded { .. } | Error::DimensionCap { .. } => 3,
        Error::UnknownProblem(_) => 1,
        _ => 2,
    }
}

fn write_output(out: Option<&Path>, text: &str) -> pdom::Result<()> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> pdom::Result<()> {
    match cmd {
        Command::Generate {
            dim,
            format,
            out,
            max_dim,
        } => {
            let dim = FcnDimension::with_cap(dim, max_dim)?;
            let g = fcn::build_fcn(dim);
            let format = match format {
                Format::Edgelist => GraphFormat::EdgeList,
                Format::Json => GraphFormat::Json,
                Format::Dot => GraphFormat::Dot,
            };
            let text = io::encode(&g, format)?;
            match out {
                Some(path) => {
                    fs::write(&path, text)?;
                    println!("n={} m={}", g.n(), g.m());
                }
                None => {
                    print!("{text}");
                    eprintln!("n={} m={}", g.n(), g.m());
                }
            }
        }
        Command::Monitor {
            graph,
            seeds,
            trace,
            trace_format,
        } => {
            let g = io::read_graph(&graph)?;
            let labels: Vec<&str> = seeds
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let seeds = g.vertex_set_from_labels(&labels)?;
            let closure = powerdom::monitoring_closure(&g, &seeds)?;
            println!("monitored: {}/{}", closure.monitored.len(), g.n());
            println!(
                "PDS: {}",
                if closure.monitored.is_full() {
                    "yes"
                } else {
                    "no"
                }
            );
            if trace {
                match trace_format {
                    TraceFormat::Text => print!("{}", closure.to_text(&g)),
                    TraceFormat::Json => print!("{}", closure.to_json(&g)?),
                }
            }
        }
        Command::Analyze {
            source,
            checks,
            exact_limit,
            out,
            with_traces,
            oracle,
            max_dim,
        } => {
            let checks = report::parse_checks(&checks)?;
            let (g, name, hint) = load_source(&source, max_dim)?;
            let opts = AnalysisOptions {
                checks,
                exact_limit,
                hint,
                with_traces,
                with_oracle: oracle,
            };
            let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
            let report = report::analyze(&g, &name, &opts, &timestamp)?;
            write_output(out.as_deref(), &report.to_json()?)?;
        }
        Command::Oracle {
            graph,
            problem,
            limit,
        } => {
            let g = io::read_graph(&graph)?;
            let r = oracle::brute_force(&g, problem, limit.unwrap_or(problem.default_limit()))?;
            println!("{}", serde_json::to_string_pretty(&r.record(&g))?);
        }
    }
    Ok(())
}

fn load_source(
    source: &Source,
    max_dim: u32,
) -> pdom::Result<(Graph, String, Option<pdom::VertexSet>)> {
    match (&source.graph, source.dim) {
        (Some(path), _) => Ok((io::read_graph(path)?, path.display().to_string(), None)),
        (None, Some(d)) => {
            let dim = FcnDimension::with_cap(d, max_dim)?;
            Ok((
                fcn::build_fcn(dim),
                format!("FCN({d})"),
                Some(fcn::canonical_pds(dim)),
            ))
        }
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
