use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polar_order::commands::{
    budget_from_flags, tol_from_flag, InfoSetConfig, OrderConfig, OrderMethod, Output, SynthConfig,
    ZBscConfig,
};
use polar_order::CliError;

/// Delta-parameter tools for binary-input channels: polarization, stochastic
/// orders and information sets.
#[derive(Parser)]
#[command(name = "polar-order", version)]
struct Cli {
    /// Slack for stop-loss comparisons.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Atom budget kept after every polarization step (default 256).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Keep every atom; fails once a step would exceed the atom cap.
    #[arg(long, global = true)]
    exact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Delta-distribution of a synthetic channel as CSV.
    Synth {
        #[arg(long)]
        channel: PathBuf,
        /// Signs over '+'/'-', leftmost applied first.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        sequence: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Is LHS below RHS? Exit 0 when it holds, 1 when not.
    Order {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, value_enum)]
        method: OrderMethod,
        /// Compare |Delta| rather than Delta.
        #[arg(long)]
        abs: bool,
    },
    /// Information set report (CSV) and summary (JSON).
    Infoset {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "bhattacharyya_complement")]
        phi: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Best BSC approximations of a Z-channel.
    ExampleZbsc {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1e-7)]
        resolution: f64,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let budget = budget_from_flags(cli.budget, cli.exact)?;
    let tol = tol_from_flag(cli.tol)?;
    match cli.command {
        Command::Synth {
            channel,
            sequence,
            output,
        } => SynthConfig::validate(&channel, &sequence, budget, output)?.run(),
        Command::Order {
            lhs,
            rhs,
            method,
            abs,
        } => OrderConfig::validate(&lhs, &rhs, method, abs, tol)?.run(),
        Command::Infoset {
            channel,
            n,
            phi,
            eps,
            output,
            summary,
        } => InfoSetConfig::validate(&channel, n, &phi, eps, budget, output, summary)?.run(),
        Command::ExampleZbsc { p, resolution } => ZBscConfig::validate(p, resolution)?.run(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            std::io::stdout().flush().ok();
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
