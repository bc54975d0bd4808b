use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rconf::checks::{Ctx, DEFAULT_SEED};
use rconf::commands::{self, CliError, LoopSource, Output};
use rconf_core::tracer::Precision;

#[derive(Parser)]
#[command(name = "rconf", version, about = "Restricted configuration spaces of polynomial roots")]
struct Cli {
    /// Floating precision of root tracking.
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Auto)]
    precision: PrecisionArg,
    /// JSON output where text is the default.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of the randomized property checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    DoubleDouble,
    Auto,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::DoubleDouble => Precision::DoubleDouble,
            PrecisionArg::Auto => Precision::Auto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Braid word of a loop, as JSON.
    Trace(TraceArgs),
    /// Exact membership of a polynomial `[c0, c1, ...]` in C, QC and RC.
    Member {
        /// Polynomial coefficients, or points with `--points`.
        input: String,
        /// Treat the input as a point list `[z1, z2, ...]` and test QF.
        #[arg(long)]
        points: bool,
    },
    /// Polynomials S_ij for base size m.
    Sij(SijArgs),
    /// Reidemeister-Schreier presentation of a finite-index subgroup, as JSON.
    Present(PresentArgs),
    /// Real min-max fibration.
    Realfib {
        #[command(subcommand)]
        command: RealfibCommand,
    },
    /// Run the acceptance checks.
    Reproduce {
        /// Run only the check with this name or name prefix.
        #[arg(long)]
        only: Option<String>,
        /// Record wall time per check.
        #[arg(long)]
        timings: bool,
        /// List checks without running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TraceArgs {
    /// Loop file.
    #[arg(long = "loop", value_name = "FILE")]
    file: Option<String>,
    /// Builtin loop name.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args)]
struct SijArgs {
    /// Base size.
    #[arg(long)]
    m: usize,
    /// First index.
    #[arg(long, requires = "j", conflicts_with = "all")]
    i: Option<usize>,
    /// Second index.
    #[arg(long, requires = "i", conflicts_with = "all")]
    j: Option<usize>,
    /// Every pair i < j.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PresentArgs {
    /// JSON input file, or `-` for standard input.
    #[arg(long)]
    input: Option<String>,
    /// Named example.
    #[arg(long, value_parser = ["rb3"])]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum RealfibCommand {
    /// m(Q) and M(Q) of a real polynomial Q.
    Minmax {
        /// Coefficients `[c0, c1, ...]`.
        #[arg(long)]
        poly: String,
    },
    /// Fiber coordinate of a monic real polynomial with real roots.
    Ev0 {
        /// Coefficients `[c0, c1, ...]`.
        #[arg(long)]
        poly: String,
    },
    /// A polynomial Q of the given degree with m(Q) >= M(Q).
    Counterexample {
        /// Degree of Q.
        #[arg(long)]
        degree: usize,
    },
}

fn read_source(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    Ok(s)
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let precision = Precision::from(cli.precision);
    match cli.command {
        Command::Trace(a) => match (a.file, a.builtin) {
            (Some(f), _) => commands::cmd_trace(LoopSource::Text(&read_source(&f)?), precision),
            (None, Some(b)) => commands::cmd_trace(LoopSource::Builtin(&b), precision),
            (None, None) => Err(CliError::usage("either --loop or --builtin is required")),
        },
        Command::Member { input, points } => commands::cmd_member(&input, points, cli.json),
        Command::Sij(a) => {
            if !a.all && a.i.is_none() {
                return Err(CliError::usage("either --i and --j or --all is required"));
            }
            commands::cmd_sij(a.m, a.i.zip(a.j), cli.json)
        }
        Command::Present(a) => {
            let input = match (a.input, a.preset) {
                (Some(path), _) => commands::parse_present_input(&read_source(&path)?)?,
                _ => commands::rb3_input(),
            };
            commands::cmd_present(&input)
        }
        Command::Realfib { command } => match command {
            RealfibCommand::Minmax { poly } => commands::cmd_minmax(&poly),
            RealfibCommand::Ev0 { poly } => commands::cmd_ev0(&poly),
            RealfibCommand::Counterexample { degree } => commands::cmd_counterexample(degree),
        },
        Command::Reproduce { only, timings, list } => {
            let ctx = Ctx { seed: cli.seed, precision };
            commands::cmd_reproduce(&ctx, only.as_deref(), timings, list, cli.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
