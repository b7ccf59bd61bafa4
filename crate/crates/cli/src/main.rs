mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use gardner::board::Slope;

use crate::output::{CommandResult, Status};

#[derive(Parser, Debug)]
#[command(name = "gardner", version, about = "Minimum good queen placements: search, verify, certify")]
struct Cli {
    /// Print the full result as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock budget in seconds for searching commands.
    #[arg(long, global = true, value_name = "SECS")]
    budget: Option<f64>,
    /// Worker threads for the solver.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute m3(n) with a witness.
    Solve {
        #[arg(long)]
        n: usize,
        /// Largest queen count to try.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        no_symmetry: bool,
        /// First queen count to try.
        #[arg(long, conflicts_with = "theorem_bound")]
        hint: Option<usize>,
        /// Start at the published lower bound instead of 1.
        #[arg(long)]
        theorem_bound: bool,
    },
    /// Reproduce the table of m3 values.
    Table {
        #[arg(long)]
        max_n: usize,
        /// Also search n = 10 and 11.
        #[arg(long)]
        large: bool,
        #[arg(long)]
        theorem_bound: bool,
    },
    /// Check a placement file for goodness.
    Verify {
        /// JSON placement file, or a fixture name (figure1, figure2, figure3).
        #[arg(long)]
        placement: String,
    },
    /// Compute the top coefficients of the covering polynomials.
    Certify {
        #[arg(long)]
        placement: String,
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Slope for each lonely queen's line (Case 1), in row-major queen order.
        #[arg(long = "slope", value_parser = parse_slope)]
        slopes: Vec<Slope>,
    },
    /// Print the 8x8 system, its RREF and null space.
    Nullspace {
        #[arg(long)]
        k: usize,
        /// Use the corrected second coefficient row.
        #[arg(long)]
        exact: bool,
    },
    /// Classify a Case 2 placement's vector against the system.
    Classify {
        #[arg(long)]
        placement: String,
    },
    /// Build nested octagon placements for n = 8k+1.
    Construct {
        #[arg(long)]
        n: usize,
        /// Seed squares "x,y" (centered), one per octagon.
        #[arg(long = "seed")]
        seeds: Vec<String>,
        /// Emit every valid seed set.
        #[arg(long)]
        all: bool,
    },
    /// Write the DIMACS encoding for (n, q).
    EncodeCnf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a SAT model against a DIMACS file and decode it.
    CheckModel {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.budget {
        Some(b) if !(b.is_finite() && b > 0.0) => {
            return finish(CommandResult::error(Status::Fail, "--budget must be a positive number of seconds"), cli.json)
        }
        b => b.map(Duration::from_secs_f64),
    };
    let ctx = commands::Context { budget, threads: cli.threads };
    let result = match cli.command {
        Command::Solve { n, max_size, no_symmetry, hint, theorem_bound } => {
            commands::solve(&ctx, n, max_size, !no_symmetry, hint, theorem_bound)
        }
        Command::Table { max_n, large, theorem_bound } => commands::table(&ctx, max_n, large, theorem_bound),
        Command::Verify { placement } => commands::verify(&placement),
        Command::Certify { placement, case, slopes } => match case {
            CaseArg::One => commands::certify_case1(&placement, &slopes),
            CaseArg::Two => commands::certify_case2(&placement),
        },
        Command::Nullspace { k, exact } => commands::nullspace(k, exact),
        Command::Classify { placement } => commands::classify(&placement),
        Command::Construct { n, seeds, all } => commands::construct(n, &seeds, all),
        Command::EncodeCnf { n, q, out } => commands::encode_cnf(n, q, out.as_deref()),
        Command::CheckModel { cnf, model } => commands::check_model(&cnf, &model),
    };
    let result = result.unwrap_or_else(|e| CommandResult::error(Status::Fail, format!("{e:#}")));
    finish(result, cli.json)
}

fn finish(result: CommandResult, json: bool) -> ExitCode {
    // a closed pipe downstream is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", result.render(json));
    ExitCode::from(result.status.exit_code() as u8)
}
