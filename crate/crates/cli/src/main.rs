//! `hcgl`: exact gadget synthesis and reduction checks from the shell.
//!
//! Every command prints one JSON document `{status, payload, trace}` and
//! exits with the code of its status: 0 ok, 2 verification failed,
//! 3 capacity, 4 domain error, 5 search exhausted.

mod commands;
mod outcome;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hcgl::numerics::rational::BigRational;
use hcgl::reduction::DEFAULT_VERIFY_BRUTE_CAP;

use commands::parse_rational;
use outcome::{CommandResult, Status};

#[derive(Parser)]
#[command(name = "hcgl", version, about = "Hard-core gadgets at negative activities, exactly")]
#[command(after_help = "HCGL_PRECISION_BITS overrides the default working precision (128 bits).")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Z (and Z^in, Z^out at a vertex) of a JSON graph.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, conflicts_with = "activities")]
        lambda: Option<BigRational>,
        /// JSON array of per-vertex activities, e.g. ["-1", "1/2"].
        #[arg(long)]
        activities: Option<PathBuf>,
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Build a gadget implementing `target` within `eps` at activity `lambda`.
    Implement {
        #[arg(long)]
        delta: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: BigRational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        target: BigRational,
        #[arg(long, value_parser = parse_rational)]
        eps: BigRational,
        /// Longest path tried by the scans.
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a 3-regular graph's 2-spin instance into a hard-core instance.
    Reduce {
        #[arg(long)]
        h_graph: PathBuf,
        #[arg(long)]
        delta: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: BigRational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda1: Option<BigRational>,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda2: Option<BigRational>,
        #[arg(long, value_parser = parse_rational)]
        eps: Option<BigRational>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-derive every identity of a reduction file.
    Verify {
        #[arg(long)]
        reduction: PathBuf,
        /// Check against this H instead of the one stored in the file.
        #[arg(long)]
        h_graph: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_BRUTE_CAP)]
        brute_cap: usize,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
        /// Perturb a frozen value of this criterion; it must then fail.
        #[arg(long)]
        corrupt: Option<u8>,
    },
}

fn dispatch(cmd: Command) -> CommandResult {
    let r = match cmd {
        Command::Eval { graph, lambda, activities, vertex } => {
            commands::eval(&graph, lambda.as_ref(), activities.as_deref(), vertex)
        }
        Command::Implement { delta, lambda, target, eps, n_max, out } => {
            commands::implement(&commands::ImplementArgs { delta, lambda, target, eps, n_max, out })
        }
        Command::Reduce { h_graph, delta, lambda, lambda1, lambda2, eps, out } => {
            commands::reduce_cmd(&commands::ReduceArgs { h_graph, delta, lambda, lambda1, lambda2, eps, out })
        }
        Command::Verify { reduction, h_graph, brute_cap, out } => {
            commands::verify(&reduction, h_graph.as_deref(), brute_cap, out.as_deref())
        }
        Command::Selftest { only, corrupt } => commands::selftest(only, corrupt),
    };
    r.unwrap_or_else(|e| e)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            let r = CommandResult::error(Status::DomainError, first);
            emit(&r);
        }
    };
    let result = dispatch(cli.command);
    emit(&result);
}

fn emit(r: &CommandResult) -> ! {
    // A closed pipe must not turn into a panic; the exit code still counts.
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(r).expect("serializable"));
    std::process::exit(r.status.exit_code());
}
