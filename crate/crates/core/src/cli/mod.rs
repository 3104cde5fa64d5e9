//! Command-line front end. Every CSV is written next to a `.meta` file that
//! holds the resolved configuration; passing that file back as `--config`
//! reproduces the CSV.

pub mod commands;
pub mod config;
pub mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
use config::{CommandKind, Config};

pub const THREADS_ENV: &str = "ALLEE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "allee", version, about = "Allee-effect plasticity experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one trajectory.
    Simulate(RunArgs),
    /// Locate and classify fixed points.
    FixedPoints(RunArgs),
    /// Trace/determinant sign scan and Hopf verdicts.
    HopfScan(RunArgs),
    /// Bifurcation events along one parameter.
    Sweep(RunArgs),
    /// Overlap with the stable fixed point over time.
    Overlap(RunArgs),
    /// One-parameter sensitivity trajectories.
    Sensitivity(RunArgs),
    /// Noisy retrieval for a single rule.
    Retrieve(RunArgs),
    /// Accuracy table over rules and noise levels.
    NoiseSweep(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Flat key = value file; a `.meta` file from an earlier run works too.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override a key, e.g. `--set A=0.5`. Repeatable; applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    pub plots: bool,
}

impl Command {
    fn split(&self) -> (CommandKind, &RunArgs) {
        match self {
            Command::Simulate(a) => (CommandKind::Simulate, a),
            Command::FixedPoints(a) => (CommandKind::FixedPoints, a),
            Command::HopfScan(a) => (CommandKind::HopfScan, a),
            Command::Sweep(a) => (CommandKind::Sweep, a),
            Command::Overlap(a) => (CommandKind::Overlap, a),
            Command::Sensitivity(a) => (CommandKind::Sensitivity, a),
            Command::Retrieve(a) => (CommandKind::Retrieve, a),
            Command::NoiseSweep(a) => (CommandKind::NoiseSweep, a),
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

/// Resolve the configuration, run the command and write its outputs.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let (kind, args) = cli.command.split();
    let cfg = Config::load(kind, args.config.as_deref(), &args.set)?;
    let artifacts = commands::run(&cfg)?;
    std::fs::create_dir_all(&args.out)?;
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let meta = cfg.render_meta(&[
        ("tool_version", format!("allee {}", env!("CARGO_PKG_VERSION"))),
        ("generated_unix", stamp.to_string()),
    ]);
    let mut written = Vec::new();
    for a in artifacts {
        let csv = args.out.join(format!("{}.csv", a.name));
        write(&csv, &a.table.to_csv())?;
        let meta_path = args.out.join(format!("{}.meta", a.name));
        write(&meta_path, &meta)?;
        written.push(csv);
        written.push(meta_path);
        if let (true, Some(svg)) = (args.plots, a.plot) {
            let p = args.out.join(format!("{}.svg", a.name));
            write(&p, &svg)?;
            written.push(p);
        }
    }
    Ok(written)
}

fn init_threads() {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring {THREADS_ENV}={v:?}"),
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(&cli) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
