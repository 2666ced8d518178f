//! etg: trajectories, invariant verification, and geometry export for the
//! discrete-time Euler top.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input or regime.

mod config;
mod emit;
mod evolve;
mod geometry;
mod scene;
mod verify;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{Mode, Overrides, RunConfig};
use geometry::MeshOptions;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Lib(euler_top::Error),
    Io(std::io::Error),
}

impl CliError {
    fn invalid(msg: String) -> Self {
        CliError::Invalid(msg)
    }
}

impl From<euler_top::Error> for CliError {
    fn from(e: euler_top::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "error[InvalidInput]: {msg}"),
            CliError::Lib(e) => write!(f, "error[{}]: {e}", e.name()),
            CliError::Io(e) => write!(f, "error[Io]: {e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "etg",
    version,
    about = "Discrete-time Euler top: trajectories, invariant verification, geometry export"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a trajectory and write trajectory.csv / trajectory.json
    Evolve(RunArgs),
    /// Run the invariant suites and write report.json (exit 1 on failure)
    Verify(RunArgs),
    /// Export geometry.json and, with --mesh, OBJ meshes and polylines
    Geometry(GeometryArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration; inline flags override its fields
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Step parameters d1,d2,d3 (alternating signs)
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, value_name = "A,B,C")]
    delta: Option<[f64; 3]>,
    /// Initial state x1,x2,x3
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, value_name = "A,B,C")]
    x0: Option<[f64; 3]>,
    /// Number of map steps
    #[arg(long, value_name = "N")]
    steps: Option<u32>,
    /// Trajectory representation
    #[arg(long, value_enum, value_name = "MODE")]
    mode: Option<Mode>,
    /// First involution phase; defaults to half the time step
    #[arg(long, allow_hyphen_values = true, value_name = "V")]
    nu1: Option<f64>,
    /// Seed for the randomized verification suites
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Output directory, created if missing
    #[arg(long, default_value = ".", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct GeometryArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Also write OBJ meshes for every quadric plus curve/generator polylines
    #[arg(long)]
    mesh: bool,
    /// Mesh resolution: samples along the two surface parameters
    #[arg(long, default_value = "64x64", value_parser = parse_resolution, value_name = "NxM")]
    resolution: [u32; 2],
    /// Clip range for ruling, extrusion, and hyperbola-arc parameters
    #[arg(long = "v-range", default_value = "-2,2", value_parser = parse_range, allow_hyphen_values = true, value_name = "LO,HI")]
    v_range: [f64; 2],
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad number {part:?}: {e}"))?;
    }
    Ok(out)
}

fn parse_range(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected lo,hi, got {s:?}"));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| format!("bad number {:?}: {e}", parts[0]))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| format!("bad number {:?}: {e}", parts[1]))?;
    Ok([lo, hi])
}

fn parse_resolution(s: &str) -> Result<[u32; 2], String> {
    let parts: Vec<&str> = s.split('x').collect();
    if parts.len() != 2 {
        return Err(format!("expected NxM, got {s:?}"));
    }
    let n: u32 = parts[0]
        .trim()
        .parse()
        .map_err(|e| format!("bad count {:?}: {e}", parts[0]))?;
    let m: u32 = parts[1]
        .trim()
        .parse()
        .map_err(|e| format!("bad count {:?}: {e}", parts[1]))?;
    Ok([n, m])
}

fn resolve_args(a: &RunArgs) -> Result<RunConfig, CliError> {
    config::resolve(
        a.config.as_deref(),
        Overrides {
            delta: a.delta,
            x0: a.x0,
            steps: a.steps,
            mode: a.mode,
            nu1: a.nu1,
            seed: a.seed,
        },
    )
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Evolve(a) => {
            let config = resolve_args(&a)?;
            evolve::run(&config, &a.out)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let config = resolve_args(&a)?;
            verify::run(&config, &a.out)
        }
        Command::Geometry(g) => {
            let config = resolve_args(&g.run)?;
            let opts = MeshOptions {
                enabled: g.mesh,
                resolution: g.resolution,
                v_range: g.v_range,
            };
            geometry::run(&config, &g.run.out, &opts)?;
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
