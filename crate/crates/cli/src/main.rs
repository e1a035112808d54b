//! `qstab`: periods, figures, checks, HN filtrations and analytic
//! continuation from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or domain error.

mod check;
mod figures;
mod format;
mod hn;
mod periods;
mod transport;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::format::Format;

#[derive(Parser, Debug)]
#[command(name = "qstab", version, about = "Quintic and A1 periods, central charges and stability conditions")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Working precision in bits.
    #[arg(long, global = true, env = "QSTAB_PRECISION", default_value_t = 256)]
    pub precision: u32,
    /// Series or check order; each suite has its own default.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (a directory for `figures`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn validate(&self) -> anyhow::Result<()> {
        qstab_core::numeric::check_precision(self.precision)?;
        if self.order == Some(0) {
            anyhow::bail!("--order must be positive");
        }
        Ok(())
    }

    pub fn order_or(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Period vector at one point.
    Periods(periods::PeriodsArgs),
    /// CSV tables of level charges and lifted phases for both regimes.
    Figures(figures::FiguresArgs),
    /// Run one suite of checks.
    Check(check::CheckArgs),
    /// Harder-Narasimhan filtration of a representation given as JSON.
    Hn(hn::HnArgs),
    /// Connection matrix by numerical continuation past the conifold.
    Transport(transport::TransportArgs),
}

/// What a successful run reports back to `main`.
pub enum Outcome {
    Done,
    ChecksFailed,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    cli.config.validate()?;
    let cfg = &cli.config;
    match cli.command {
        Command::Periods(a) => periods::run(&a, cfg),
        Command::Figures(a) => figures::run(&a, cfg),
        Command::Check(a) => check::run(&a, cfg),
        Command::Hn(a) => hn::run(&a, cfg),
        Command::Transport(a) => transport::run(&a, cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
