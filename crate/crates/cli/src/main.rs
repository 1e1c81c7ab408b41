mod artifacts;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

/// Exact real algebraic kernels for parametric polynomial systems.
#[derive(Parser, Debug)]
#[command(name = "cuspcad", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isolate the real roots of a univariate polynomial.
    Isolate {
        polynomial: String,
        /// Print JSON instead of one interval per line.
        #[arg(long)]
        json: bool,
    },
    /// Solve the manipulator model for a fixed design.
    Solve(SolveArgs),
    /// Discriminant variety, open CAD and per-cell solution counts.
    Classify(ClassifyArgs),
    /// Points of a classified surface over a rational grid, as CSV.
    Mesh(MeshArgs),
    /// Locate a parameter point among the cells of a classification.
    Lookup {
        /// Directory written by `classify`.
        #[arg(long)]
        from: PathBuf,
        /// Comma-separated rationals, e.g. `1/2,3`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Constraints,
    Singularity,
    Cusp,
}

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long = "L2", allow_hyphen_values = true)]
    pub l2: String,
    #[arg(long = "L3", allow_hyphen_values = true)]
    pub l3: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rho1: String,
    #[arg(long, value_enum, default_value = "cusp")]
    pub system: SystemArg,
    /// Actuated angle: radians, or an exact `cos,sin` pair.
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta3: Option<String>,
    /// Largest coordinate width of a reported box.
    #[arg(long, default_value = "1/1000")]
    pub width: String,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "L2eqL3")]
    L2EqL3,
    General,
}

#[derive(clap::Args, Debug)]
pub struct ClassifyArgs {
    /// Manipulator cusp system to classify.
    #[arg(long, value_enum, conflicts_with = "system_file")]
    pub mode: Option<ModeArg>,
    /// JSON system file (`cuspcad.system/1`).
    #[arg(long)]
    pub system_file: Option<PathBuf>,
    /// Comma-separated projection order, innermost first.
    #[arg(long)]
    pub param_order: Option<String>,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Abort when a projection level's total degree exceeds this.
    #[arg(long, default_value_t = cuspcad::classifier::DEFAULT_DEGREE_GUARD)]
    pub max_level_degree: usize,
    /// Abort when the critical locus needs more Jacobian minors than this.
    #[arg(long, default_value_t = cuspcad::classifier::DvOptions::default().max_minors)]
    pub max_minors: usize,
    /// Seed of the generic-dimension check.
    #[arg(long, default_value_t = cuspcad::classifier::DvOptions::default().seed)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Dv,
    Level3,
}

#[derive(clap::Args, Debug)]
pub struct MeshArgs {
    /// Directory written by `classify`.
    #[arg(long)]
    pub from: PathBuf,
    #[arg(long, value_enum, default_value = "level3")]
    pub surface: SurfaceArg,
    /// Grid points per lower parameter axis.
    #[arg(long, default_value_t = 20)]
    pub grid: usize,
    /// `lo:hi` per lower parameter, in projection order.
    #[arg(long = "range", allow_hyphen_values = true)]
    pub ranges: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CUSPCAD_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| Failure::usage(format!("CUSPCAD_THREADS must be a number, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot start {n} threads: {e}")))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Isolate { polynomial, json } => commands::isolate(&polynomial, json),
        Command::Solve(a) => commands::solve(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Mesh(a) => commands::mesh(&a),
        Command::Lookup { from, point } => commands::lookup(&from, &point),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
