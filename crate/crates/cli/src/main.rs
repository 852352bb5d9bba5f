//! `unimod`: verify and analyze unimodular systems from the command line.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use unimod::polytope::{DEFAULT_SCAN_CAP, DEFAULT_SIGN_SCAN_CAP};
use unimod::DEFAULT_ENUMERATION_CAP;

use commands::{Caps, CliError};
use report::Report;

#[derive(Parser)]
#[command(
    name = "unimod",
    version,
    about = "Exact computations with unimodular systems"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest number of forms for any exponential enumeration.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,

    /// Worker threads for the scans (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a system and print its standard form, or a witness minor.
    Check { src: String },
    /// Number of bases, as det(AᵀA).
    Complexity {
        src: String,
        /// Also count bases one by one and compare.
        #[arg(long)]
        enumerate: bool,
    },
    /// The Gale dual system.
    Dual {
        src: String,
        /// Write the dual to a file instead of standard output.
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<String>,
    },
    /// Split off the one-form direct summands.
    Decompose { src: String },
    /// Search for a signed correspondence between two systems.
    Isomorphic { a: String, b: String },
    /// Number of automorphisms.
    Aut { src: String },
    /// Gram matrix, discriminant and short vectors of the lattice.
    Lattice { src: String },
    /// Lattice points, vertices and facets of the polytope.
    Polytope {
        src: String,
        /// List every lattice point.
        #[arg(long)]
        points: bool,
    },
    /// The graphic or cographic system of a graph.
    Graph(GraphArgs),
    /// Named systems and graphs.
    Catalog {
        /// List the entries (the default).
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["graphic", "cographic"])))]
struct GraphArgs {
    /// Edge-list file or catalog graph reference.
    edges: String,
    /// Forms on the cycle space.
    #[arg(long)]
    graphic: bool,
    /// Forms on the cut space.
    #[arg(long)]
    cographic: bool,
    /// Contract bridges and delete loops first.
    #[arg(long)]
    stabilize: bool,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let echo = argv[1..].join(" ");

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    let caps = match cli.cap {
        Some(n) => Caps {
            enumeration: n,
            points: n,
            signs: n,
        },
        None => Caps {
            enumeration: DEFAULT_ENUMERATION_CAP,
            points: DEFAULT_SCAN_CAP,
            signs: DEFAULT_SIGN_SCAN_CAP,
        },
    };

    let start = Instant::now();
    let result = match &cli.command {
        Command::Check { src } => commands::check(src),
        Command::Complexity { src, enumerate } => commands::complexity(src, *enumerate, caps),
        Command::Dual { src, output } => commands::dual(src, output.as_deref()),
        Command::Decompose { src } => commands::decompose(src),
        Command::Isomorphic { a, b } => commands::isomorphic(a, b, caps),
        Command::Aut { src } => commands::aut(src, caps),
        Command::Lattice { src } => commands::lattice(src, caps),
        Command::Polytope { src, points } => commands::polytope(src, *points, caps),
        Command::Graph(g) => commands::graph(&g.edges, g.cographic, g.stabilize),
        Command::Catalog { .. } => commands::catalog_list(),
    };
    let elapsed = start.elapsed();

    match result {
        Ok((outcome, inputs)) => {
            let report = Report {
                command: &echo,
                inputs: &inputs,
                elapsed,
            };
            if cli.json {
                print!("{}", report.render_json("result", outcome.json));
            } else {
                print!("{}", report.render_text(&outcome.text));
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(&echo, cli.json, e, elapsed),
    }
}

fn fail(echo: &str, json: bool, e: CliError, elapsed: std::time::Duration) -> ExitCode {
    let kind = match e {
        CliError::Usage(_) => "usage",
        CliError::Verification(_) => "verification",
        CliError::Cap(_) => "cap",
    };
    if json {
        let report = Report {
            command: echo,
            inputs: &[],
            elapsed,
        };
        print!(
            "{}",
            report.render_json(
                "error",
                serde_json::json!({"kind": kind, "message": e.to_string()})
            )
        );
    }
    eprintln!("error: {}", e);
    ExitCode::from(e.exit_code() as u8)
}
