//! `modft`: command-line front end for the `modular-dft` library.
//!
//! Every command prints one JSON envelope
//! `{"command", "params", "result", "timing_ms"}` on stdout.  Exit codes:
//! 0 success, 2 precondition violation, 3 verification failure.

mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "modft", version, about = "Fourier transforms over finite fields and symmetric groups")]
struct Cli {
    /// Seed for every randomized subroutine.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Indented JSON with matrices rendered one row per line.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root-of-unity DFT of length N over F_p.
    CyclicDft {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        /// Primitive N-th root of unity; defaults to g^((p-1)/N) for the least
        /// primitive root g.
        #[arg(long)]
        alpha: Option<u64>,
        /// Comma-separated integers, or `-` for stdin.  Defaults to 0,1,...,N-1.
        #[arg(long, allow_hyphen_values = true)]
        input: Option<String>,
        #[arg(long)]
        inverse: bool,
    },
    /// Factorization of x^N - 1 over F_p with the cyclotomic structure report.
    FactorXn1 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        /// Also report the field F_(p^f) splitting the p-regular part.
        #[arg(long)]
        splitting_field: bool,
    },
    /// Chinese-remainder transform on F_p[x]/(x^N - 1).
    CrtDft {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        /// Comma-separated signal, or residues concatenated in canonical factor
        /// order with --inverse.  `-` reads stdin.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Symmetric group transforms.
    Sn {
        action: SnAction,
        #[arg(long)]
        n: Option<usize>,
        /// Prime for modular computations; omitted means the rationals.
        #[arg(long)]
        p: Option<u64>,
        /// Stored matrix for matrix-order: stored-2-3 or stored-3-4.
        #[arg(long)]
        fixture: Option<String>,
        /// With `unitary --n 3`: run the exact check battery on the stored matrix.
        #[arg(long)]
        verify_fixture: bool,
        /// Comma-separated group algebra coefficients (dft) or concatenated
        /// Fourier blocks (idft).  `-` reads stdin.
        #[arg(long, allow_hyphen_values = true)]
        input: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnAction {
    Dft,
    Idft,
    Unitary,
    ModularDft,
    Idempotents,
    MatrixOrder,
}

/// A command that could not run; exits with code 2.
#[derive(Debug)]
pub enum Failure {
    Precondition(String),
}

impl From<modular_dft::Error> for Failure {
    fn from(e: modular_dft::Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

/// Result payload plus whether every internal check passed.
pub struct Outcome {
    pub result: Value,
    pub verified: bool,
    pub failed_check: Option<String>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { result, verified: true, failed_check: None }
    }
}

fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        commands::pretty(value)
    } else {
        value.to_string()
    }
}

/// Writes one line to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, params) = describe(&cli.command, cli.seed);
    let start = Instant::now();
    let outcome = commands::run(&cli.command, cli.seed);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let envelope = |result: Value| {
        json!({"command": name, "params": params, "result": result, "timing_ms": timing_ms})
    };
    match outcome {
        Ok(out) => {
            emit(&render(&envelope(out.result), cli.pretty));
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed: {}", out.failed_check.unwrap_or_default());
                ExitCode::from(3)
            }
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn describe(cmd: &Command, seed: u64) -> (&'static str, Value) {
    match cmd {
        Command::CyclicDft { n, p, alpha, input, inverse } => (
            "cyclic-dft",
            json!({"n": n, "p": p, "alpha": alpha, "input": input, "inverse": inverse, "seed": seed}),
        ),
        Command::FactorXn1 { n, p, splitting_field } => (
            "factor-xn1",
            json!({"n": n, "p": p, "splitting_field": splitting_field, "seed": seed}),
        ),
        Command::CrtDft { n, p, input, inverse } => (
            "crt-dft",
            json!({"n": n, "p": p, "input": input, "inverse": inverse, "seed": seed}),
        ),
        Command::Sn { action, n, p, fixture, verify_fixture, input } => (
            "sn",
            json!({
                "action": action.to_possible_value().map(|v| v.get_name().to_string()),
                "n": n,
                "p": p,
                "fixture": fixture,
                "verify_fixture": verify_fixture,
                "input": input,
                "seed": seed,
            }),
        ),
    }
}
