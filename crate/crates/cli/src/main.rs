mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use twistor_holonomy::Error;

/// Rotation pairs, holonomy groups, orbit density and SO(4) transport.
#[derive(Parser, Debug)]
#[command(name = "twistor", version)]
struct Cli {
    /// Emit the JSON report envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// PRNG seed (required by `density --method words`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Element cap for group closure.
    #[arg(long, global = true, default_value_t = twistor_holonomy::holonomy::DEFAULT_CAP)]
    cap: usize,
    /// Equality tolerance for group elements and orbit points.
    #[arg(long, global = true, default_value_t = twistor_holonomy::holonomy::DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct TripletArgs {
    /// θ'_x as a multiple of π, e.g. `1/2` (radians with --numeric).
    #[arg(long, allow_hyphen_values = true)]
    pub tx: String,
    /// θ'_y as a multiple of π.
    #[arg(long, allow_hyphen_values = true)]
    pub ty: String,
    /// cos φ: `0`, `r`, `sqrt(r)` or one of `phi23 phi25_1 phi25_2 phi33 phi35_1 phi35_2 phi55`.
    #[arg(long)]
    pub phi: String,
    /// Allow angles outside (0, π]; plain decimals are read as radians.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Matrices, traces and axes of the rotation pair.
    Pair(TripletArgs),
    /// Minimal polynomial of ζ and the finiteness verdict.
    Verdict(TripletArgs),
    /// Minimal polynomial from a trace, or the cos(2π/n) pipeline for a prime n.
    Minpoly {
        /// Exact trace expression, e.g. `1/2 - sqrt(2)`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "prime", required_unless_present = "prime")]
        trace: Option<String>,
        /// Odd prime n.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Group closure, classification and the orbit of a basis vector.
    Orbit {
        #[command(flatten)]
        triplet: TripletArgs,
        /// Basis vector p_i to start from.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        point: u8,
    },
    /// Sphere coverage of an orbit.
    Density {
        #[command(flatten)]
        triplet: TripletArgs,
        /// Grid resolution in degrees.
        #[arg(long, default_value_t = 5.0)]
        res: f64,
        #[arg(long, value_enum, default_value_t = Method::Words)]
        method: Method,
        /// Maximum random word length.
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        /// Number of random words.
        #[arg(long, default_value_t = 1_000_000)]
        count: usize,
        /// Number of W_k / W'_k rounds.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Powers per circle in the W_k construction.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Write the points as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Parallel transport along a normal polygonal curve.
    Transport {
        #[command(flatten)]
        triplet: TripletArgs,
        /// Moves such as `x+1,y+1,x-1,y-1`.
        #[arg(long, default_value = "x+1", allow_hyphen_values = true)]
        curve: String,
        /// Twist for the x period: unit 4-vector `b1,b2,b3,b4`.
        #[arg(long, allow_hyphen_values = true)]
        bx: Option<String>,
        /// Twist for the y period.
        #[arg(long, allow_hyphen_values = true)]
        by: Option<String>,
    },
    /// Verify the shipped catalog of finite triplets.
    Catalog {
        /// Only this entry.
        #[arg(long)]
        id: Option<String>,
        /// Also check every halved triplet: exact verdict against closure.
        #[arg(long)]
        halved: bool,
    },
    /// Regenerate the case tables and diff against the golden file.
    Tables {
        /// Golden file to compare against (default: the shipped one).
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Images of p₁ under random words.
    Words,
    /// The alternating W_k / W'_k circle construction.
    Wk,
}

/// Global settings shared by every command.
pub struct Globals {
    pub seed: Option<u64>,
    pub cap: usize,
    pub tol: f64,
}

/// What a command produced.
pub struct Report {
    pub inputs: Value,
    pub result: Value,
    /// False when a cross-check inside the command failed.
    pub consistent: bool,
}

pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_domain() => 3,
            CliError::Core(Error::IncompleteGroup) => 3,
            CliError::Core(
                Error::Parse(_) | Error::OutOfDomain(_) | Error::NotUnit(_) | Error::NotPrime(_) | Error::ExcludedCase(_),
            ) => 2,
            CliError::Core(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

/// JSON report. Field order is fixed: `command`, `version`, `inputs`,
/// `result`, `elapsed_ms`.
#[derive(Serialize)]
struct ReportEnvelope<'a> {
    command: &'a str,
    version: &'a str,
    inputs: Value,
    result: Value,
    elapsed_ms: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let globals = Globals {
        seed: cli.seed,
        cap: cli.cap,
        tol: cli.tol,
    };
    let start = Instant::now();
    let (name, outcome) = match &cli.command {
        Command::Pair(t) => ("pair", commands::pair(t)),
        Command::Verdict(t) => ("verdict", commands::verdict(t)),
        Command::Minpoly { trace, prime } => ("minpoly", commands::minpoly(trace.as_deref(), *prime)),
        Command::Orbit { triplet, point } => ("orbit", commands::orbit(&globals, triplet, *point)),
        Command::Density {
            triplet,
            res,
            method,
            max_len,
            count,
            k,
            samples,
            csv,
        } => (
            "density",
            commands::density(
                &globals,
                triplet,
                commands::DensityParams {
                    res: *res,
                    method: *method,
                    max_len: *max_len,
                    count: *count,
                    k: *k,
                    samples: *samples,
                    csv: csv.clone(),
                },
            ),
        ),
        Command::Transport { triplet, curve, bx, by } => (
            "transport",
            commands::transport(triplet, curve, bx.as_deref(), by.as_deref()),
        ),
        Command::Catalog { id, halved } => ("catalog", commands::catalog(&globals, id.as_deref(), *halved)),
        Command::Tables { golden } => ("tables", commands::tables(golden.as_deref())),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code());
        }
    };
    let envelope = ReportEnvelope {
        command: name,
        version: env!("CARGO_PKG_VERSION"),
        inputs: report.inputs,
        result: report.result,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&envelope).expect("report serializes"));
    } else {
        print!("{}", render::text(&serde_json::to_value(&envelope).expect("report serializes")));
    }
    if report.consistent {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: consistency check failed");
        ExitCode::from(4)
    }
}
