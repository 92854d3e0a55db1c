use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilcomb_core::error::Error;
use nilcomb_core::io;
use nilcomb_core::lie::{adapt_basis, dani_mainkar, heisenberg};
use nilcomb_core::linalg::{self, RatMatrix};
use nilcomb_core::verify::Scope;
use nilcomb_core::{Graph, Limits, Tolerances, TwoStepAlgebra};

mod report;

/// Environment variable with cap overrides, e.g. `exact=24,spectral=16`.
const CAP_OVERRIDE_VAR: &str = "NILCOMB_CAP_OVERRIDE";

#[derive(Parser, Debug)]
#[command(
    name = "nilcomb",
    version,
    about = "Independence polynomials, bounds and basic partition functions of 2-step nilpotent Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Worker threads for degree-slice parallelism (default: all cores)
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    /// Generator cap for exact cohomology
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..=64))]
    exact_cap: Option<u32>,

    /// Cap on the first Betti number for the eigensolve path
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    spectral_cap: Option<u32>,

    /// Vertex cap for brute-force enumeration
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..=64))]
    enum_cap: Option<u32>,

    /// Relative zero threshold for eigenvalues
    #[arg(long, global = true, default_value_t = 1e-8)]
    zero_tol: f64,

    /// Relative clustering tolerance for eigenvalues
    #[arg(long, global = true, default_value_t = 1e-8)]
    cluster_tol: f64,

    /// JSON output (default)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Human-readable output
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Args, Debug, Default)]
#[group(multiple = false)]
struct Source {
    /// Use the Heisenberg algebra h_N
    #[arg(long, value_name = "N")]
    heisenberg: Option<usize>,

    /// Read an algebra from a JSON structure-constant file
    #[arg(long, value_name = "FILE")]
    algebra: Option<PathBuf>,

    /// Read a graph from an edge-list file
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Independence polynomial, independence number, abelian subalgebra and bounds
    Analyze {
        #[command(flatten)]
        source: Source,

        /// Analyze the Dani-Mainkar algebra of the graph (implied for analyze)
        #[arg(long, requires = "graph")]
        dani_mainkar: bool,
    },
    /// Basic partition function Z(s, t)
    Partition {
        #[command(flatten)]
        source: Source,

        /// Eigensolve on the Dani-Mainkar algebra instead of the combinatorial graph path
        #[arg(long, requires = "graph")]
        dani_mainkar: bool,

        /// Gram matrix in the input basis (default: identity)
        #[arg(long, value_name = "FILE", conflicts_with = "closed_form_heisenberg")]
        gram: Option<PathBuf>,

        /// Closed form for (h_N, canonical metric)
        #[arg(long, value_name = "N", conflicts_with_all = ["heisenberg", "algebra", "graph"])]
        closed_form_heisenberg: Option<usize>,
    },
    /// Bounds on the independence number from (d, b), or from an algebra
    Bounds {
        #[command(flatten)]
        source: Source,

        /// Dimension d
        #[arg(long, requires = "betti", conflicts_with_all = ["heisenberg", "algebra", "graph"])]
        dim: Option<u64>,

        /// First Betti number b
        #[arg(long, requires = "dim")]
        betti: Option<u64>,

        /// Known independence number, checked against the bounds
        #[arg(long, requires = "dim")]
        alpha: Option<u64>,
    },
    /// Graph-side quantities: independent sets, graph bounds, F(G; q, r, s, t)
    Graph {
        /// Edge-list file
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,

        /// Include the four-variable subgraph polynomial
        #[arg(long)]
        trinks: bool,
    },
    /// Run the cross-check suite
    Verify {
        /// quick | full
        #[arg(long, default_value = "quick")]
        scope: Scope,

        /// Run a single criterion
        #[arg(long, value_name = "ID", value_parser = clap::value_parser!(u8).range(1..=8))]
        criterion: Option<u8>,

        /// Directory of extra inputs (*.json algebras, *.edges graphs) to check
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
    },
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Report printed on stdout before the error, for failed checks.
    pub report: Option<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            report: None,
        }
    }

    pub fn check(message: impl Into<String>) -> Self {
        Failure {
            code: 5,
            message: message.into(),
            report: None,
        }
    }

    pub fn with_report(mut self, report: String) -> Self {
        self.report = Some(report);
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::CapExceeded { .. } => 4,
            Error::EigenFailure(_) | Error::Numerical { .. } | Error::AbelianSearchExhausted { .. } => 5,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Output format and resolved configuration.
pub struct Ctx {
    pub text: bool,
    pub limits: Limits,
    pub tol: Tolerances,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    Ok(io::parse_graph(&read(path)?)?)
}

/// An algebra in adapted form with the transition matrix from the input basis.
pub struct Loaded {
    pub label: String,
    pub algebra: TwoStepAlgebra,
    pub transition: Option<RatMatrix>,
}

pub fn load_algebra_file(path: &Path) -> CliResult<Loaded> {
    let raw = io::parse_algebra_json(&read(path)?)?;
    let adapted = adapt_basis(&raw)?;
    Ok(Loaded {
        label: path.display().to_string(),
        algebra: adapted.algebra,
        transition: Some(adapted.transition),
    })
}

fn load_source(source: &Source) -> CliResult<Loaded> {
    if let Some(n) = source.heisenberg {
        return Ok(Loaded {
            label: format!("h_{n}"),
            algebra: heisenberg(n)?,
            transition: None,
        });
    }
    if let Some(path) = &source.algebra {
        return load_algebra_file(path);
    }
    if let Some(path) = &source.graph {
        return Ok(Loaded {
            label: format!("L({})", path.display()),
            algebra: dani_mainkar(&load_graph(path)?),
            transition: None,
        });
    }
    Err(Failure::usage(
        "no input: pass one of --heisenberg N, --algebra FILE, --graph FILE",
    ))
}

/// Reads a Gram matrix given in the input basis and rewrites it in the adapted basis.
fn load_gram(path: &Path, loaded: &Loaded) -> CliResult<RatMatrix> {
    let gram = io::parse_gram_json(&read(path)?)?;
    let d = loaded.algebra.dim();
    if gram.len() != d || gram.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidInput(format!("Gram matrix must be {d} x {d}")).into());
    }
    Ok(match &loaded.transition {
        Some(t) => linalg::mat_mul(&linalg::transpose(t), &linalg::mat_mul(&gram, t)),
        None => gram,
    })
}

fn resolve(opts: &GlobalOpts) -> CliResult<Ctx> {
    let mut limits = Limits::default();
    if let Ok(spec) = std::env::var(CAP_OVERRIDE_VAR) {
        limits = limits
            .with_overrides(&spec)
            .map_err(|e| Failure::usage(format!("{CAP_OVERRIDE_VAR}: {e}")))?;
    }
    let mut flags = Vec::new();
    if let Some(n) = opts.exact_cap {
        flags.push(format!("exact={n}"));
    }
    if let Some(n) = opts.spectral_cap {
        flags.push(format!("spectral={n}"));
    }
    if let Some(n) = opts.enum_cap {
        flags.push(format!("enum={n}"));
    }
    limits = limits.with_overrides(&flags.join(","))?;
    let tol = Tolerances::new(opts.zero_tol, opts.cluster_tol)?;
    if let Some(jobs) = opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot size worker pool: {e}")))?;
    }
    Ok(Ctx {
        text: opts.text,
        limits,
        tol,
    })
}

fn run(cli: Cli) -> CliResult<String> {
    let ctx = resolve(&cli.opts)?;
    match cli.command {
        Command::Analyze { source, .. } => report::analyze(&ctx, &load_source(&source)?),
        Command::Partition {
            source,
            dani_mainkar,
            gram,
            closed_form_heisenberg,
        } => {
            if let Some(n) = closed_form_heisenberg {
                return report::partition_closed_form(&ctx, n);
            }
            match (&source.graph, dani_mainkar) {
                (Some(path), false) => report::partition_graph(&ctx, &load_graph(path)?, path),
                _ => {
                    let loaded = load_source(&source)?;
                    let gram = gram.map(|p| load_gram(&p, &loaded)).transpose()?;
                    report::partition_metric(&ctx, &loaded, gram)
                }
            }
        }
        Command::Bounds {
            source,
            dim,
            betti,
            alpha,
        } => match (dim, betti) {
            (Some(d), Some(b)) => report::bounds(&ctx, None, d, b, alpha),
            _ => {
                let loaded = load_source(&source)?;
                let alpha = nilcomb_core::cohomology::independence_number(&loaded.algebra, &ctx.limits)?;
                let alg = &loaded.algebra;
                report::bounds(&ctx, Some(&loaded.label), alg.dim() as u64, alg.b() as u64, Some(alpha as u64))
            }
        },
        Command::Graph { graph, trinks } => report::graph(&ctx, &load_graph(&graph)?, trinks),
        Command::Verify {
            scope,
            criterion,
            corpus,
        } => report::verify(&ctx, scope, criterion, corpus.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(report) = &f.report {
                println!("{report}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
