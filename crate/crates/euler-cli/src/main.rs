use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use euler_cli::grammar::{parse_session, ParseError};
use euler_cli::session::{run_statements, Session, SessionOptions};
use euler_core::MonomialOrder;

/// Calculator sessions over smooth affine quadrics: points, composition,
/// Segre classes, moving lemmas, and Euler symbol reduction.
#[derive(Parser)]
#[command(name = "euler", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a session file and print its transcript.
    Run {
        /// Session file (statements terminated by ';', '#' comments).
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Read statements from standard input, one complete statement set per
    /// line; errors are reported and the loop continues.
    Repl {
        #[command(flatten)]
        flags: Flags,
    },
    /// Parse a session file without executing it.
    Check {
        /// Session file to parse.
        file: PathBuf,
    },
}

#[derive(Args)]
struct Flags {
    /// Seed for every randomized search (defaults to $EULER_SEED, else 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Degree bound for randomly drawn coefficients.
    #[arg(long, default_value_t = 3)]
    degree_cap: u32,
    /// Attempt budget for randomized searches.
    #[arg(long, default_value_t = 64)]
    attempts: usize,
    /// Echo witnesses (homotopies, comaximal certificates, move data).
    #[arg(long)]
    witnesses: bool,
    /// Monomial order for declared rings.
    #[arg(long, value_enum, default_value_t = OrderFlag::Degrevlex)]
    order: OrderFlag,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderFlag {
    Lex,
    Degrevlex,
}

impl Flags {
    fn options(&self) -> SessionOptions {
        let seed = self.seed.or_else(env_seed).unwrap_or(0);
        let order = match self.order {
            OrderFlag::Lex => MonomialOrder::Lex,
            OrderFlag::Degrevlex => MonomialOrder::DegRevLex,
        };
        SessionOptions {
            seed,
            attempts: self.attempts,
            degree_cap: self.degree_cap,
            witnesses: self.witnesses,
            order,
        }
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("EULER_SEED").ok()?.trim().parse().ok()
}

fn report_parse_error(err: &ParseError) {
    eprintln!("error: {err}");
}

fn run_file(file: &PathBuf, flags: &Flags) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(3);
        }
    };
    let statements = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            report_parse_error(&e);
            return ExitCode::from(2);
        }
    };
    let mut session = Session::new(flags.options());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run_statements(&mut session, &statements, |line| {
        let _ = writeln!(out, "{line}");
    }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            drop(out);
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run_repl(flags: &Flags) -> ExitCode {
    let mut session = Session::new(flags.options());
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {e}");
                break;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let statements = match parse_session(&line) {
            Ok(s) => s,
            Err(e) => {
                report_parse_error(&e);
                continue;
            }
        };
        let result = run_statements(&mut session, &statements, |out_line| {
            println!("{out_line}");
        });
        if let Err(e) = result {
            eprintln!("error: {}", e.message());
        }
    }
    ExitCode::SUCCESS
}

fn check_file(file: &PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(3);
        }
    };
    match parse_session(&text) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            report_parse_error(&e);
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Cmd::Run { file, flags } => run_file(file, flags),
        Cmd::Repl { flags } => run_repl(flags),
        Cmd::Check { file } => check_file(file),
    }
}
