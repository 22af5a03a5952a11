mod commands;
mod input;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spexgraph::audit::{CycleMode, Provenance};
use spexgraph::extremal::{Objective, DEFAULT_ENUM_CAP};
use spexgraph::{Error, Family, ForbiddenFamily};

#[derive(Parser, Debug)]
#[command(name = "spexgraph", version, about = "Spectral extremal problems for cycles: constructions, search and audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph.
    Construct(ConstructArgs),
    /// Spectral radius and Perron vector of each input graph.
    Spectral(SpectralArgs),
    /// Search each input graph for a forbidden cycle.
    CheckFree(CheckFreeArgs),
    /// Exhaustive maximum of edges or spectral radius over a family-free class.
    Extremal(ExtremalArgs),
    /// Seeded hill-climb for the spectral extremal graph.
    Search(SearchArgs),
    /// Evaluate the inequalities of the theory on concrete graphs.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    G6,
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct GraphSpec {
    /// Named family: empty, complete, path, cycle, complete_bipartite, turan, s_nk, s_nk_plus.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// First side of complete_bipartite.
    #[arg(long)]
    pub a: Option<usize>,
    /// Second side of complete_bipartite.
    #[arg(long)]
    pub b: Option<usize>,
    /// Number of parts of turan.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// graph6 file, one graph per line; `-` reads standard input.
    #[arg(long, value_name = "FILE|-")]
    pub g6: Option<String>,
    #[command(flatten)]
    pub graph: GraphSpec,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Forbidden cycles as comma-separated tokens, e.g. `C5,C6`.
    #[arg(long, value_parser = parse_forbid)]
    pub forbid: Option<ForbiddenFamily>,
    /// With --k, forbid only C_{2k+2} (the default).
    #[arg(long, conflicts_with = "both")]
    pub even_only: bool,
    /// With --k, forbid C_{2k+1} and C_{2k+2}.
    #[arg(long)]
    pub both: bool,
}

impl FamilyArgs {
    pub fn mode(&self) -> CycleMode {
        if self.both {
            CycleMode::Both
        } else {
            CycleMode::EvenOnly
        }
    }

    pub fn resolve(&self, k: Option<usize>) -> spexgraph::Result<ForbiddenFamily> {
        match (&self.forbid, k) {
            (Some(f), _) => Ok(f.clone()),
            (None, Some(k)) if k >= 1 => self.mode().family(k),
            (None, Some(k)) => Err(Error::Parameter(format!("--k must be at least 1, got {k}"))),
            (None, None) => Err(Error::Parameter("give --forbid or --k".into())),
        }
    }
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long = "format", visible_alias = "out", value_enum, default_value = "g6")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long = "format", visible_alias = "out", value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CheckFreeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long = "format", visible_alias = "out", value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = parse_objective, default_value = "lambda")]
    pub objective: Objective,
    /// Scan the graphs of this graph6 file instead of enumerating.
    #[arg(long, value_name = "FILE|-")]
    pub g6: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Largest n accepted for enumeration.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub cap: usize,
    /// Report wall-clock seconds (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long = "format", visible_alias = "out", value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long = "format", visible_alias = "out", value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Audits to run: neighborhood, global, bipartition, spex.
    #[arg(long, value_delimiter = ',', default_value = "neighborhood,global")]
    pub kind: Vec<AuditKind>,
    /// Restrict the report to these check ids.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Vertices of U for the bipartition audit; W is the rest.
    #[arg(long, value_delimiter = ',')]
    pub u: Vec<usize>,
    /// Extremal class the spex audit assumes, C_{2k+2} only unless set.
    #[arg(long, conflicts_with = "both")]
    pub even_only: bool,
    #[arg(long)]
    pub both: bool,
    #[arg(long, value_parser = parse_provenance, default_value = "extremal")]
    pub provenance: Provenance,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Treat the input as a corpus: fan out over graphs and print a summary table.
    #[arg(long)]
    pub corpus: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long = "format", visible_alias = "out", value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditKind {
    Neighborhood,
    Global,
    Bipartition,
    Spex,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_forbid(s: &str) -> Result<ForbiddenFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_provenance(s: &str) -> Result<Provenance, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What went wrong, mapped onto the exit-code contract.
pub enum Failure {
    Lib(Error),
    /// An audit hard check failed; the report was already written.
    AuditFailed,
    /// Standard output went away (e.g. a closed pipe).
    Output(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::Capacity { .. } => 2,
        Error::Parse { .. } | Error::Data { .. } | Error::Io(_) => 3,
        Error::NonConvergence { .. } => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Construct(a) => commands::construct(&a, &mut out),
        Command::Spectral(a) => commands::spectral(&a, &mut out),
        Command::CheckFree(a) => commands::check_free(&a, &mut out),
        Command::Extremal(a) => commands::extremal(&a, &mut out),
        Command::Search(a) => commands::search(&a, &mut out),
        Command::Audit(a) => commands::audit(&a, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Lib(e)), _) => {
            eprintln!("spexgraph: {e}");
            ExitCode::from(exit_code(&e))
        }
        (Err(Failure::AuditFailed), _) => {
            eprintln!("spexgraph: audit hard check failed");
            ExitCode::from(4)
        }
        (Err(Failure::Output(e)), _) | (Ok(()), Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                ExitCode::SUCCESS
            } else {
                eprintln!("spexgraph: writing output: {e}");
                ExitCode::from(1)
            }
        }
    }
}
