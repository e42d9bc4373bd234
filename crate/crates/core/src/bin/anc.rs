use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use anc::cli::{run, Command, InputSource, OutputFormat, RunConfig, DEFAULT_SIZE_LIMIT};

#[derive(Parser)]
#[command(
    name = "anc",
    version,
    about = "I-function coefficients of GIT quotients, checked by localization"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Assemble the I-function up to a degree bound.
    Compute(Common),
    /// Run the property suites; exits 1 if any fails.
    Verify(Common),
    /// Describe the fixed locus of a degree lift.
    FixedLocus(Common),
    /// Integrate a class by fixed-point localization.
    Integrate(Common),
    /// List built-in targets, or print one as a JSON presentation.
    Targets(Common),
}

#[derive(Args)]
struct Common {
    /// Built-in target: p{n}, pp:a,b,..., gr:k,n or gb:k,n,l,m.
    #[arg(long, conflicts_with = "input")]
    target: Option<String>,
    /// JSON presentation file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Degree bound per class coordinate, or one value for all.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    bound: Vec<i64>,
    #[arg(long, env = "ANC_SEED")]
    seed: Option<u64>,
    /// json, text or latex.
    #[arg(long, default_value = "json")]
    format: String,
    /// Use the opposite sign for equivariant parameters.
    #[arg(long)]
    flip_convention: bool,
    /// Twist by a line bundle; only `anticanonical` is supported.
    #[arg(long)]
    twist: Option<String>,
    #[arg(long)]
    non_equivariant: bool,
    /// Degree lift for fixed-locus, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lift: Option<Vec<i64>>,
    /// one, euler, char:ξ[^p] or coeff:β.
    #[arg(long)]
    integrand: Option<String>,
    /// Maximum number of lifts in one coefficient.
    #[arg(long, env = "ANC_SIZE_LIMIT", default_value_t = DEFAULT_SIZE_LIMIT)]
    size_limit: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Compute(a) => (Command::Compute, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::FixedLocus(a) => (Command::FixedLocus, a),
        Cmd::Integrate(a) => (Command::Integrate, a),
        Cmd::Targets(a) => (Command::Targets, a),
    };
    let format: OutputFormat = match args.format.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let input = match (args.target, args.input) {
        (Some(t), _) => Some(InputSource::Target(t)),
        (None, Some(p)) => Some(InputSource::File(p)),
        (None, None) => None,
    };
    let cfg = RunConfig {
        command,
        input,
        degree_bound: args.bound,
        seed: args.seed,
        format,
        convention_flip: args.flip_convention,
        twist: args.twist,
        equivariant: !args.non_equivariant,
        lift: args.lift,
        integrand: args.integrand,
        size_limit: args.size_limit,
    };
    let out = run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
