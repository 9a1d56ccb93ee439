//! Batch front end: a session file names a ring and its ideals, a subcommand
//! runs one computation, and the result is written as a JSON report.

pub mod commands;
pub mod error;
pub mod report;
pub mod session;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

pub use commands::{run_command, Command, Flags, Mode};
pub use error::CliError;
pub use report::Report;
pub use session::Session;

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ASSERT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "frob",
    version,
    about = "Frobenius invariants of F_p-algebras from a session file"
)]
pub struct Args {
    /// Session file (TOML with [ring], [ideals], [primes]).
    pub session: PathBuf,
    #[arg(value_enum)]
    pub command: Command,
    /// Ideal name; defaults to m, the ideal of the variables.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Prime name; repeatable.
    #[arg(long = "prime")]
    pub primes: Vec<String>,
    /// Frobenius level (default 1).
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub e_max: u32,
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value_t = Mode::Fsig)]
    pub mode: Mode,
    #[arg(long, default_value_t = 2)]
    pub i_max: usize,
    /// Parameter polynomials for assoc-check, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    /// Candidate polynomials for depth-probe, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub candidates: Vec<String>,
    /// Exit with status 2 when a verdict fails.
    #[arg(long)]
    pub assert: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Args {
    pub fn flags(&self) -> Flags {
        Flags {
            ideal: self.ideal.clone(),
            primes: self.primes.clone(),
            e: self.e,
            e_max: self.e_max,
            n_max: self.n_max,
            mode: self.mode,
            i_max: self.i_max,
            params: self.params.clone(),
            candidates: self.candidates.clone(),
        }
    }
}

fn execute(args: &Args) -> Result<Report, CliError> {
    let session = Session::load(&args.session)?;
    let start = Instant::now();
    let report = run_command(&session, args.command, &args.flags())?;
    eprintln!(
        "{}: {:.3} s",
        args.command.name(),
        start.elapsed().as_secs_f64()
    );
    let text = report.render();
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report)
}

/// Parses arguments, runs the command and returns the exit status.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&args) {
        Ok(report) if args.assert && !report.verdicts_hold() => EXIT_ASSERT,
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
