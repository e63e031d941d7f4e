//! `slipfree`: plan, simulate, and identify slippage-free planar sliding.

mod commands;
mod config;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use slipfree_core::{KMatrixConvention, KvSurface, Pose2};

use config::App;
use output::CliError;

#[derive(Parser)]
#[command(
    name = "slipfree",
    version,
    about = "Slippage-free planar sliding with top contact: classify contact regimes, \
             sweep k_v, plan cone-constrained paths, simulate stick/slip rollouts, fit \
             friction parameters, and compare planners.",
    after_help = "Flags override config fields: --seed beats config.seed, --safety beats \
                  config.safety. Output files go to --out, which must already exist."
)]
struct Cli {
    /// JSON config file with friction parameters, normal force, safety,
    /// planner settings, and seed.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// RNG seed; overrides the config's `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Directory for generated files (must exist).
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Safety factor in (0, 1]; overrides the config's `safety`.
    #[arg(long, global = true)]
    safety: Option<f64>,

    /// Discrete velocity-constraint convention used by the planner.
    #[arg(long, global = true, value_enum, default_value_t = KvConventionArg::Squared)]
    kv_convention: KvConventionArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KvConventionArg {
    /// Unit-consistent form: the constraint matrix carries k_v^2.
    Squared,
    /// Published form: the constraint matrix carries k_v unsquared.
    Paper,
}

impl From<KvConventionArg> for KMatrixConvention {
    fn from(v: KvConventionArg) -> Self {
        match v {
            KvConventionArg::Squared => KMatrixConvention::Squared,
            KvConventionArg::Paper => KMatrixConvention::Paper,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KvSurfaceArg {
    /// Normal of the support-plane limit surface (default convention).
    Support,
    /// Normal of the top-contact limit surface.
    Top,
}

impl From<KvSurfaceArg> for KvSurface {
    fn from(v: KvSurfaceArg) -> Self {
        match v {
            KvSurfaceArg::Support => KvSurface::Support,
            KvSurfaceArg::Top => KvSurface::Top,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the interaction case, slope differences, critical normal
    /// forces, and the valid force range as JSON.
    Classify,

    /// Print k_v over a grid of applied normal forces as CSV (n_e,k_v).
    Kv {
        /// Lower grid edge [N]; defaults to just above the valid range start.
        #[arg(long)]
        ne_min: Option<f64>,
        /// Upper grid edge [N]; defaults to the top of the valid range, or
        /// ten times the lower edge when the range is unbounded.
        #[arg(long)]
        ne_max: Option<f64>,
        /// Number of grid points.
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Which surface's normal defines the twist at the slip boundary.
        #[arg(long, value_enum, default_value_t = KvSurfaceArg::Support)]
        surface: KvSurfaceArg,
    },

    /// Plan a slippage-free path; writes path.json and path.svg.
    Plan {
        /// Start pose as `x,y,theta` (m, m, rad).
        #[arg(long, value_parser = parse_pose)]
        start: Pose2,
        /// Goal pose as `x,y,theta` (m, m, rad).
        #[arg(long, value_parser = parse_pose)]
        goal: Pose2,
    },

    /// Roll a path file through the stick/slip simulator; writes
    /// rollout.csv and terminal_error.json.
    Simulate {
        /// Path JSON file: an array of [x, y, theta] waypoints.
        #[arg(long)]
        path: PathBuf,
    },

    /// Fit friction parameters to a segment dataset; writes fit.json and
    /// boundary.svg.
    Fit {
        /// Dataset CSV in the documented schema.
        #[arg(long)]
        dataset: PathBuf,
    },

    /// Compare the cone-constrained planner against linear interpolation
    /// over a problem suite; writes metrics.csv and per_force.csv.
    Sweep {
        /// Problems JSON: an array of {"start": [x,y,th], "goal": [x,y,th],
        /// "n_e": optional}.
        #[arg(long)]
        problems: PathBuf,
    },
}

fn parse_pose(s: &str) -> Result<Pose2, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected `x,y,theta`, got `{s}`"));
    }
    let mut vals = [0.0; 3];
    for (v, p) in vals.iter_mut().zip(parts.iter()) {
        *v = p
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number `{p}`: {e}"))?;
    }
    Ok(Pose2::new(vals[0], vals[1], vals[2]))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let app = App::load(
        cli.config.as_deref(),
        cli.seed,
        cli.safety,
        cli.out,
        cli.kv_convention.into(),
    )?;
    match cli.command {
        Command::Classify => commands::classify(&app),
        Command::Kv {
            ne_min,
            ne_max,
            steps,
            surface,
        } => commands::kv_sweep(&app, ne_min, ne_max, steps, surface.into()),
        Command::Plan { start, goal } => commands::plan(&app, start, goal),
        Command::Simulate { path } => commands::simulate(&app, &path),
        Command::Fit { dataset } => commands::fit(&app, &dataset),
        Command::Sweep { problems } => commands::sweep(&app, &problems),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
