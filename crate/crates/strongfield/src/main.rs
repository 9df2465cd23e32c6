//! `strongfield` — photoelectron spectra from the command line.
//!
//! Subcommands: `spectrum` (run a configured SFA/TDSE computation and write
//! its CSV), `compare` (align two spectrum CSVs: scale fit, peak table, peak
//! offsets), `saddles` (saddle-point tables), `eigen` (effective-charge
//! tuning report), `plot` (self-contained gnuplot script). Config files are
//! flat `key = value` text; see the repository README for the key list.
//!
//! Exit codes: 0 success, 2 bad config or input, 3 solver failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use strongfield::cli;

#[derive(Parser)]
#[command(name = "strongfield", version, about = "Strong-field ionization spectra: SFA and TDSE")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a photoelectron spectrum and write it as CSV.
    Spectrum {
        /// Config file (flat `key = value`; empty file = reference setup).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path (defaults to `output.csv` from the config, else stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two spectrum CSVs: scale factor, matched peaks, offsets.
    Compare {
        /// First spectrum CSV.
        a: PathBuf,
        /// Second spectrum CSV.
        b: PathBuf,
        /// Energy window `emin:emax` in a.u. (defaults to the grid overlap).
        #[arg(long)]
        window: Option<String>,
        /// Report file (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate ionization saddle points over the configured energy grid.
    Saddles {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report tuned effective charges for the configured TDSE potential.
    Eigen {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a gnuplot script rendering one or more spectrum CSVs.
    Plot {
        /// Spectrum CSVs, one curve each.
        csvs: Vec<PathBuf>,
        /// Script file (defaults to stdout); the PNG is named after it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let result = match &args.command {
        Command::Spectrum { config, out } => cli::cmd_spectrum(config, out.as_deref()),
        Command::Compare { a, b, window, out } => {
            cli::cmd_compare(a, b, window.as_deref(), out.as_deref())
        }
        Command::Saddles { config, out } => cli::cmd_saddles(config, out.as_deref()),
        Command::Eigen { config, out } => cli::cmd_eigen(config, out.as_deref()),
        Command::Plot { csvs, out } => cli::cmd_plot(csvs, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
