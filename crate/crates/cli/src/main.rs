mod couple;
mod explain;
mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stochord::couplings::Method;
use stochord::verify::{self, Suite};
use stochord::{decide, oracle, Policy, Relation};

/// Exit codes: 0 definite answer, 1 domination violation or failed check,
/// 2 input error, 3 undecided.
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "stochord", version, about = "Decide and couple stochastically ordered discrete laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide P ≤st Q and print the verdict as JSON.
    Decide(PairArgs),
    /// Human-readable report: likelihood ratios, tail conditions, closed form, crossings.
    Explain(PairArgs),
    /// Sample a monotone coupling as JSON lines followed by a summary line.
    Couple(CoupleArgs),
    /// Run self-check suites; one JSON line per criterion.
    Verify(VerifyArgs),
    /// Compare survival functions directly and print the oracle report.
    Oracle(PairArgs),
}

/// Distributions are JSON specs such as `{"family":"binomial","n":18,"p":"1/2"}`,
/// a JSON array of success probabilities (a Poisson-binomial law), or
/// `@path` to read either from a file.
#[derive(Args)]
struct PairArgs {
    p: String,
    q: String,
    /// Last point scanned by the oracle on infinite supports.
    #[arg(long)]
    k_cap: Option<u64>,
    /// Residual tail mass below which an uncertified scan is trusted.
    #[arg(long, default_value_t = oracle::DEFAULT_EPSILON, value_parser = positive)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Explicit,
    Levy,
    Occupancy,
    Poissonize,
    Quantile,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Explicit => Method::Explicit,
            MethodArg::Levy => Method::Levy,
            MethodArg::Occupancy => Method::Occupancy,
            MethodArg::Poissonize => Method::Poissonize,
            MethodArg::Quantile => Method::Quantile,
        }
    }
}

#[derive(Args)]
struct CoupleArgs {
    p: String,
    q: String,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, env = "STOCHORD_SEED", default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Include how each sample was built.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, env = "STOCHORD_SEED", default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: verify::UnknownSuite| e.to_string())
}

/// A failed command: exit code plus message for stderr.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl ToString) -> Self {
        Self { code: EXIT_INPUT, message: message.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::input(format!("i/o error: {e}"))
    }
}

type Outcome = Result<u8, Failure>;

fn sink(args: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    Ok(match &args.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn relation_code(r: Relation) -> u8 {
    if r.is_definite() {
        0
    } else {
        EXIT_UNKNOWN
    }
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn cmd_decide(args: &PairArgs) -> Outcome {
    let (p, q) = input::pair(&args.p, &args.q)?;
    let verdict = decide(&p, &q, &Policy { k_cap: args.k_cap, epsilon: args.epsilon });
    let mut out = sink(&args.output)?;
    json_line(&mut out, &verdict)?;
    out.flush()?;
    Ok(relation_code(verdict.relation))
}

fn cmd_oracle(args: &PairArgs) -> Outcome {
    let (p, q) = input::pair(&args.p, &args.q)?;
    let report = oracle::dominance(&p, &q, args.k_cap, args.epsilon);
    let mut out = sink(&args.output)?;
    json_line(&mut out, &report)?;
    out.flush()?;
    Ok(relation_code(report.relation))
}

fn cmd_explain(args: &PairArgs) -> Outcome {
    let (p, q) = input::pair(&args.p, &args.q)?;
    let policy = Policy { k_cap: args.k_cap, epsilon: args.epsilon };
    let mut out = sink(&args.output)?;
    let relation = explain::render(&mut out, &p, &q, &policy)?;
    out.flush()?;
    Ok(relation_code(relation))
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let mut out = sink(&args.output)?;
    let mut failed = 0;
    for &id in args.suite.criteria() {
        let report = verify::run_criterion(id, args.seed);
        eprintln!("{report}");
        failed += usize::from(!report.passed);
        json_line(&mut out, &report)?;
    }
    let total = args.suite.criteria().len();
    json_line(&mut out, &serde_json::json!({ "passed": total - failed, "failed": failed }))?;
    out.flush()?;
    Ok(if failed == 0 { 0 } else { EXIT_VIOLATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decide(a) => cmd_decide(a),
        Command::Explain(a) => cmd_explain(a),
        Command::Couple(a) => couple::run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
