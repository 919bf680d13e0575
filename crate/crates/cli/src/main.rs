use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use parcross::corpus::DEFAULT_CAP;
use parcross_cli::report::{self, Report};
use parcross_cli::{load_system, CliError};

/// Partial automorphisms of finite-dimensional C*-algebras and their crossed
/// products.
///
/// SYSTEM is a file in JSON or line format, `-` for standard input, or a
/// named family such as `shift_n(3)`, `cycle_k(2)`, `direct_sum_shifts_N(4)`,
/// `c0_shift_truncated_N(5)` or `random(seed,size,density)`.
#[derive(Parser)]
#[command(name = "parcross", version)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Power ideals, Wold decomposition, classification and orbits.
    Analyze { system: String },
    /// Spectral dimensions and structure of the crossed product.
    CrossedProduct {
        system: String,
        /// Check each chain orbit against the saturation oracle.
        #[arg(long)]
        verify: bool,
        /// Tensor every block with M_D first.
        #[arg(long, value_name = "D", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        tensor: u32,
    },
    /// Compare the double crossed product with A ⊗ K.
    Duality { system: String },
    /// Ladder ideals and their layers.
    Subquotients {
        system: String,
        #[arg(long, value_name = "K")]
        max_n: i64,
    },
    /// Automorphic core and the shift parts.
    Wold { system: String },
    /// Run every property check over all small systems.
    Enumerate {
        #[arg(long, value_name = "K")]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Check every labeled system instead of one per relabeling class.
        #[arg(long)]
        labeled: bool,
    },
    /// Disjointness of translates of the harmonic set, with optional density evidence.
    Sieben {
        #[arg(long, value_name = "N")]
        n: i64,
        /// Window radius R and translate count M for the gap ladder.
        #[arg(long, num_args = 2, value_names = ["R", "M"])]
        density: Option<Vec<u64>>,
    },
}

fn emit<R: Report>(report: R, json: bool) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        );
    } else {
        print!("{report}");
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let json = cli.json;
    Ok(match cli.command {
        Command::Analyze { system } => emit(report::analyze(&load_system(&system)?), json),
        Command::CrossedProduct {
            system,
            verify,
            tensor,
        } => emit(
            report::crossed_product(&load_system(&system)?, tensor, verify)?,
            json,
        ),
        Command::Duality { system } => emit(report::duality(&load_system(&system)?), json),
        Command::Subquotients { system, max_n } => {
            emit(report::subquotients(&load_system(&system)?, max_n)?, json)
        }
        Command::Wold { system } => emit(report::wold(&load_system(&system)?), json),
        Command::Enumerate { size, cap, labeled } => {
            emit(report::enumerate(size, cap, labeled)?, json)
        }
        Command::Sieben { n, density } => {
            let density = density.map(|v| (v[0], v[1] as i64));
            emit(report::sieben(n, density)?, json)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
