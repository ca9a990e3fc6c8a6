//! Experiment driver around the exact harmonic analysis library. Every run
//! names a field, a norm, and an input function, executes one mode, and
//! writes a deterministic body (CSV or function document) plus a summary.
//!
//! The body always goes to one clean stream: to `--out` when given, else to
//! stdout with the summary moved to stderr. Repeated runs with the same
//! inputs produce byte-identical bodies; wall time and other metadata stay
//! in the summary.

pub mod config;
pub mod error;
pub mod fit;
pub mod plot;
pub mod random;
pub mod scan;

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand};

use config::{CommonArgs, FileConfig, Resolved};
use error::{io_err, CliError, CliResult};
use scan::ScanReport;

#[derive(Parser)]
#[command(
    name = "lfbesov",
    version,
    about = "Exact Fourier and Besov-norm experiments on Laurent-series fields"
)]
pub struct Cli {
    /// TOML file supplying defaults for any flag
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Transform a function and emit the result as a function document
    Fourier(CommonArgs),
    /// Band-by-band norm table and the assembled norm
    BesovNorm(CommonArgs),
    /// Norm growth under dilation, checked against the scaling envelope
    DilateScan(CommonArgs),
    /// Sums of dilated translates, checked against the coefficient envelope
    LocalizeScan(CommonArgs),
    /// Battery of exactness identities with per-check pass counts
    CheckInvariants(CommonArgs),
}

impl Cmd {
    fn args(&self) -> &CommonArgs {
        match self {
            Cmd::Fourier(a)
            | Cmd::BesovNorm(a)
            | Cmd::DilateScan(a)
            | Cmd::LocalizeScan(a)
            | Cmd::CheckInvariants(a) => a,
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let start = std::time::Instant::now();
    let file_cfg = match &cli.config {
        Some(path) => config::read_file_config(path)?,
        None => FileConfig::default(),
    };
    let cfg = Resolved::merge(file_cfg, cli.cmd.args())?;
    let report = match &cli.cmd {
        Cmd::Fourier(_) => scan::run_fourier(&cfg)?,
        Cmd::BesovNorm(_) => scan::run_besov_norm(&cfg)?,
        Cmd::DilateScan(_) => scan::run_dilate_scan(&cfg)?,
        Cmd::LocalizeScan(_) => scan::run_localize_scan(&cfg)?,
        Cmd::CheckInvariants(_) => scan::run_invariants(&cfg)?,
    };
    deliver(&cfg, &report, start.elapsed())?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Check(
            "a scan check failed; see the summary above".into(),
        ))
    }
}

fn deliver(cfg: &Resolved, report: &ScanReport, elapsed: Duration) -> CliResult<()> {
    if let (Some(path), Some(chart)) = (&cfg.plot, &report.chart) {
        plot::write_chart(path, &chart.title, &chart.x_label, &chart.y_label, &chart.series)?;
    }
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &report.body).map_err(|e| io_err(path, e))?;
            println!("# {}", cfg.echo());
            for line in &report.summary {
                println!("{line}");
            }
            println!("elapsed_ms = {}", elapsed.as_millis());
            println!("wrote {}", path.display());
        }
        None => {
            eprintln!("# {}", cfg.echo());
            for line in &report.summary {
                eprintln!("{line}");
            }
            eprintln!("elapsed_ms = {}", elapsed.as_millis());
            print!("{}", report.body);
        }
    }
    Ok(())
}
