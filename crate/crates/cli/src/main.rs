//! `socrule`: social rules over bundled feature spaces from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

/// Cap on the number of outcomes accepted from any input.
const MAX_M_VAR: &str = "FOSOR_MAX_M";
const DEFAULT_MAX_M: usize = 4096;

#[derive(Parser, Debug)]
#[command(name = "socrule", version, about = "Optima and basins of attraction of social rules over feature spaces")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock timings to the output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RuleArg {
    /// Rule file (`features: m1 .. mn` header and dominance matrix).
    #[arg(long)]
    rule: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Universal basin of an outcome, by strata, with deepnesses.
    Basin {
        #[command(flatten)]
        rule: RuleArg,
        /// Outcome as a value tuple, e.g. `0,1,1`.
        #[arg(long)]
        outcome: String,
        /// Use the literal layer test, which can miss basin members.
        #[arg(long)]
        literal: bool,
    },
    /// Free / local / u-local / global status of an outcome.
    Check {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        outcome: String,
        /// Objects scheme, e.g. `1-2,3`.
        #[arg(long)]
        scheme: Option<String>,
        /// Agenda over the scheme as 1-based object indices, e.g. `1,2,1`.
        #[arg(long, requires = "scheme")]
        agenda: Option<String>,
        /// Longest agenda tried when checking globality for the scheme
        /// (default: number of objects + 1).
        #[arg(long, requires = "scheme")]
        max_agenda_len: Option<usize>,
        /// Also report whether the outcome lies in the universal basin of this one.
        #[arg(long)]
        basin_of: Option<String>,
    },
    /// A scheme and agenda leading from one outcome to another.
    Witness {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Irreducible components, lowest first, and the top component.
    Condense {
        #[command(flatten)]
        rule: RuleArg,
    },
    /// Free outcomes and u-local optima of a rule.
    Optima {
        #[command(flatten)]
        rule: RuleArg,
        /// Also list the local optima of this scheme.
        #[arg(long)]
        scheme: Option<String>,
    },
    /// Exact counts and probabilities.
    Count {
        #[command(flatten)]
        selector: CountArgs,
        /// Decimal places in renderings.
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Monte Carlo frequencies of optima counts over random rules.
    Stats {
        #[arg(long, num_args = 1.., required = true)]
        features: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Local)]
        kind: KindArg,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// A rule attaining the largest possible number of free outcomes, in rule file format.
    Extremal {
        #[arg(long, num_args = 1.., required = true)]
        features: Vec<usize>,
        /// Residue selecting one of the disjoint extremal families.
        #[arg(long, default_value_t = 0)]
        shift: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CountArgs {
    /// Number of tournaments on M unlabeled nodes.
    #[arg(long, value_name = "M")]
    tournaments: Option<usize>,
    /// Probability that a random tournament on M nodes is irreducible.
    #[arg(long, value_name = "M")]
    prob_irreducible: Option<usize>,
    /// Rules on two features with k free outcomes, for every k.
    #[arg(long, num_args = 2, value_names = ["M1", "M2"])]
    free: Option<Vec<usize>>,
    /// Gain over the classical model: the feature count n, then m1 .. mn.
    #[arg(long, num_args = 2.., value_names = ["N", "M"])]
    gain: Option<Vec<usize>>,
    /// Probability that a rule on M outcomes has a classical optimum.
    #[arg(long, value_name = "M")]
    classical: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    Local,
    Ulocal,
    UlocalLiteral,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

/// Failures with their exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

impl From<socrule::Error> for Failure {
    fn from(e: socrule::Error) -> Self {
        use socrule::Error as E;
        match e {
            E::InvalidArgument(_) | E::AgendaBoundTooSmall { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// What a subcommand prints.
enum Output {
    Json(Value),
    Text(String),
}

fn max_outcomes() -> Result<usize, Failure> {
    match std::env::var(MAX_M_VAR) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Failure::Usage(format!("{MAX_M_VAR} must be a positive integer, got {v:?}")))
        }
        Err(_) => Ok(DEFAULT_MAX_M),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let limit = max_outcomes()?;
    let started = Instant::now();
    let mut out = commands::dispatch(&cli.command, limit, cli.timings)?;
    if cli.timings {
        if let Output::Json(Value::Object(map)) = &mut out {
            map.insert("elapsed_ms".into(), serde_json::json!(started.elapsed().as_secs_f64() * 1e3));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Json(v)) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            println!("{}", text.expect("JSON values always serialize"));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Input(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
