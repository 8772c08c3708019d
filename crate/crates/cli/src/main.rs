//! `qlab`: check quantale and Q-set definitions, analyze divisible quantales,
//! compute singletons and Cauchy completions, run the verification suite and
//! print topos certificates.
//!
//! Exit codes: 0 pass, 1 usage or parse error, 2 the input fails a
//! mathematical requirement, 3 the verification suite found a failure.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qlab", version, about = "Finite divisible quantales, Q-sets and their Cauchy completions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Comma-separated builder names or quantale files (verify only).
    #[arg(long, global = true)]
    corpus: Option<String>,

    /// Quantales larger than this get Q-set families of at most 2 elements.
    #[arg(long, default_value_t = 6, global = true)]
    max_q: usize,

    /// Largest Q-set carrier enumerated by the suite.
    #[arg(long, default_value_t = 4, global = true)]
    max_x: usize,

    /// Worker threads for the suite.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest probe Q-set used for universal properties.
    #[arg(long, default_value_t = 2, global = true)]
    probe_size: usize,

    /// Print the statement behind each check.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check quantale axioms or Q-set axioms S1–S3.
    Validate { files: Vec<String> },
    /// Divisibility, frame verdict, idempotents, ⊑, C_q and ⊓ of a quantale.
    Analyze { files: Vec<String> },
    /// List the singletons of a Q-set.
    Singletons { files: Vec<String> },
    /// Cauchy completion of a Q-set.
    Complete { files: Vec<String> },
    /// Run the verification suite over a corpus.
    Verify { files: Vec<String> },
    /// Certificate that Q-Set is not a topos, or the frame-case verdict.
    Witness { files: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A reason to stop with a non-zero exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn math(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    /// Parse errors map to 1; lattice errors and other mathematical defects to 2.
    pub fn from_core(source: &str, e: qlab_core::Error) -> Self {
        use qlab_core::Error as E;
        match e {
            E::Parse(_) | E::Malformed(_) | E::UnknownName(_) | E::InvalidElement(_) => {
                Failure::usage(format!("{source}: {e}"))
            }
            _ => Failure::math(format!("{source}: {e}")),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = commands::Output::new(cli.format, cli.verbose);
    let code = match &cli.command {
        Command::Validate { files } => commands::validate(files, &mut out),
        Command::Analyze { files } => commands::analyze(files, &mut out),
        Command::Singletons { files } => commands::singletons(files, false, &mut out),
        Command::Complete { files } => commands::singletons(files, true, &mut out),
        Command::Verify { files } => commands::verify(&cli, files, &mut out),
        Command::Witness { files } => commands::witness(files, &mut out),
    };
    out.finish(command_name(&cli.command), code);
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Analyze { .. } => "analyze",
        Command::Singletons { .. } => "singletons",
        Command::Complete { .. } => "complete",
        Command::Verify { .. } => "verify",
        Command::Witness { .. } => "witness",
    }
}
