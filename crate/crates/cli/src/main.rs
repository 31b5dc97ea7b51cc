//! Command-line entry point wiring the solver library: config parsing, run
//! orchestration, CSV and manifest emission.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric failure,
//! 4 inconclusive certificate.

mod commands;
mod config;
mod manifest;

use clap::{Parser, Subcommand};
use config::ConfigFile;
use manifest::Ctx;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn config(message: String) -> Self {
        CliError { code: 2, message }
    }
    pub fn numeric(message: String) -> Self {
        CliError { code: 3, message }
    }
    pub fn inconclusive(message: String) -> Self {
        CliError { code: 4, message }
    }
}

#[derive(Parser)]
#[command(
    name = "compfront",
    about = "Traveling fronts, spreading speeds and barrier certificates for a \
             two-species competition-diffusion system",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (key = value sections); defaults apply without it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides [output] directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker-thread cap (overrides [output] threads).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the diffusion rate of u.
    #[arg(long, global = true)]
    d: Option<f64>,

    /// Override the intrinsic growth rate of u.
    #[arg(long, global = true)]
    r: Option<f64>,

    /// Override the competition coefficient on u.
    #[arg(long, global = true)]
    a: Option<f64>,

    /// Override the competition coefficient on v.
    #[arg(long, global = true)]
    b: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the two-component traveling front and report its speed.
    Front,
    /// Time-step the system from indicator initial data.
    Simulate {
        /// Override the final time.
        #[arg(long)]
        t_final: Option<f64>,
    },
    /// Track a level set of a stored trajectory and fit its speed.
    Speed {
        /// Directory written by a previous `simulate` run.
        #[arg(long)]
        trajectory: PathBuf,
        /// Override the tracked field ("u" or "v").
        #[arg(long)]
        field: Option<String>,
    },
    /// Evaluate zone-convergence suprema on a stored trajectory.
    Zones {
        /// Directory written by a previous `simulate` run.
        #[arg(long)]
        trajectory: PathBuf,
    },
    /// Classify directions of a constructive set and export the
    /// directional speed and envelope consistency.
    Geometry,
    /// Assemble a barrier certificate and verify its inequalities.
    Certify {
        /// Profile CSV from a previous `front` run; solved fresh when
        /// absent.
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Override the certificate kind ("sub" or "super").
        #[arg(long)]
        kind: Option<String>,
        /// Override the speed margin ε.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Bisect for the smallest invading seed radius.
    RadiusSearch,
}

fn load_config(cli: &Cli) -> Result<(ConfigFile, Vec<String>), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("read {}: {e}", path.display())))?;
            ConfigFile::parse(&text).map_err(|e| CliError::config(e))?
        }
        None => ConfigFile::default(),
    };
    // Flag overrides beat file values and are echoed in the manifest.
    let mut overrides = Vec::new();
    let mut over = |name: &str, slot: &mut f64, value: Option<f64>| {
        if let Some(v) = value {
            *slot = v;
            overrides.push(format!("--{name} {v}"));
        }
    };
    over("d", &mut cfg.params.d, cli.d);
    over("r", &mut cfg.params.r, cli.r);
    over("a", &mut cfg.params.a, cli.a);
    over("b", &mut cfg.params.b, cli.b);
    if let Some(t) = cli.threads {
        cfg.output.threads = t;
        overrides.push(format!("--threads {t}"));
    }
    if let Some(out) = &cli.out {
        cfg.output.directory = out.display().to_string();
        overrides.push(format!("--out {}", out.display()));
    }
    match &cli.command {
        Command::Simulate { t_final: Some(t) } => {
            cfg.simulate.t_final = *t;
            overrides.push(format!("--t-final {t}"));
        }
        Command::Speed {
            field: Some(f), ..
        } => {
            cfg.speed.field = f.clone();
            overrides.push(format!("--field {f}"));
        }
        Command::Certify { kind, eps, .. } => {
            if let Some(k) = kind {
                cfg.certify.kind = k.clone();
                overrides.push(format!("--kind {k}"));
            }
            if let Some(e) = eps {
                cfg.certify.eps = Some(*e);
                overrides.push(format!("--eps {e}"));
            }
        }
        _ => {}
    }
    Ok((cfg, overrides))
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let (cfg, overrides) = load_config(&cli)?;
    if cfg.output.threads > 0 {
        // Caps intra-command parallelism; runs stay deterministic either way.
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.output.threads)
            .build_global()
            .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    }
    let out_dir = PathBuf::from(&cfg.output.directory);
    let ctx = Ctx::new(cfg, out_dir, overrides)?;
    match &cli.command {
        Command::Front => commands::front(ctx),
        Command::Simulate { .. } => commands::simulate(ctx),
        Command::Speed { trajectory, .. } => commands::speed(ctx, trajectory),
        Command::Zones { trajectory } => commands::zones(ctx, trajectory),
        Command::Geometry => commands::geometry(ctx),
        Command::Certify { profile, .. } => commands::certify(ctx, profile.as_deref()),
        Command::RadiusSearch => commands::radius_search(ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
