//! `epoint`: exceptional-point analyses of two-level non-Hermitian
//! Hamiltonians from JSON model files.

mod commands;
mod config;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{cmd_encircle, cmd_find_ep, cmd_sweep, cmd_vector, exit_code_for, CmdOutput};
use config::{model_from_value, RunConfig};

#[derive(Parser)]
#[command(name = "epoint", version, about = "Exceptional points of 2x2 non-Hermitian Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output path; stdout when omitted. `encircle` also writes `<out>.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized property sweeps (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Locate both EPs by every applicable route and cross-validate.
    FindEp(Common),
    /// Coalesced eigenvectors, phases and polarization at both EPs.
    Vector(Common),
    /// Grid sweep over model angles; CSV output.
    Sweep(Common),
    /// Track eigenvalue branches around a closed lambda-loop.
    Encircle(Common),
}

fn load_config(path: &Path) -> Result<RunConfig, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    // serde_json errors carry line/column positions
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(out: &Option<PathBuf>, result: &CmdOutput) -> Result<(), String> {
    match out {
        None => {
            print!("{}", result.main);
            if let Some((extra, _)) = &result.extra {
                eprint!("{extra}");
            }
        }
        Some(path) => {
            fs::write(path, &result.main)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            if let Some((extra, suffix)) = &result.extra {
                let mut extra_path = path.as_os_str().to_owned();
                extra_path.push(".");
                extra_path.push(suffix);
                fs::write(&extra_path, extra)
                    .map_err(|e| format!("cannot write {extra_path:?}: {e}"))?;
            }
        }
    }
    Ok(())
}

fn run(common: &Common, which: fn(&RunConfig, &epoint_core::ModelParams, u64) -> Result<CmdOutput, epoint_core::Error>) -> ExitCode {
    let cfg = match load_config(&common.config) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let model = match model_from_value(&cfg.model) {
        Ok(m) => m,
        Err(msg) => {
            // invalid parameter combinations are a model gate, not a parse error
            let degenerate = msg.contains("model validation");
            eprintln!("error: {msg}");
            return ExitCode::from(if degenerate { 2 } else { 1 });
        }
    };
    let seed = common.seed.or(cfg.seed).unwrap_or(0);
    match which(&cfg, &model, seed) {
        Ok(result) => {
            if let Err(msg) = write_output(&common.out, &result) {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
            ExitCode::from(result.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::FindEp(c) => run(c, |cfg, p, seed| cmd_find_ep(cfg, p, seed)),
        Command::Vector(c) => run(c, |_cfg, p, _| cmd_vector(p)),
        Command::Sweep(c) => run(c, |cfg, p, _| {
            let sweep = cfg.sweep.as_ref().ok_or_else(|| {
                epoint_core::Error::InvalidArgument("config has no sweep section".into())
            })?;
            cmd_sweep(sweep, p)
        }),
        Command::Encircle(c) => run(c, |cfg, p, _| {
            let geom = cfg.loop_geometry.as_ref().ok_or_else(|| {
                epoint_core::Error::InvalidArgument("config has no loop section".into())
            })?;
            cmd_encircle(geom, p)
        }),
    }
}
