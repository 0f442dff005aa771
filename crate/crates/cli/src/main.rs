//! `starpi`: codimensions, identities and structural checks for finite
//! dimensional algebras with involution.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use starpi::eval::{EvalOptions, DEFAULT_BUDGET};
use starpi::linalg::{Arithmetic, DEFAULT_PRIME, DEFAULT_PRIME2};
use starpi::tideal::{TidealOptions, DEFAULT_MAX_DEGREE};

use report::{Format, Status};

/// Exit codes: 0 success, 1 usage or spec error, 2 refused by the cost
/// guard, 3 a verification did not hold.
#[derive(Parser, Debug)]
#[command(
    name = "starpi",
    version,
    about = "*-codimensions, *-identities and Capelli checks for algebras with involution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Prime for modular arithmetic.
    #[arg(long, global = true, env = "STARPI_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Second prime for cross-checking.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME2)]
    prime2: u64,
    /// Use one prime only.
    #[arg(long, global = true, conflicts_with = "exact")]
    single_prime: bool,
    /// Exact rational arithmetic instead of primes.
    #[arg(long, global = true)]
    exact: bool,
    /// Bound on the estimated scalar work of one computation.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Largest degree for generated-ideal computations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Common {
    fn arithmetic(&self) -> Arithmetic {
        if self.exact {
            Arithmetic::Rational
        } else if self.single_prime {
            Arithmetic::SinglePrime(self.prime)
        } else {
            Arithmetic::DualPrime(self.prime, self.prime2)
        }
    }

    fn eval(&self) -> EvalOptions {
        EvalOptions::default()
            .with_arithmetic(self.arithmetic())
            .with_budget(self.budget)
    }

    fn tideal(&self) -> TidealOptions {
        TidealOptions {
            eval: self.eval(),
            max_degree: self.max_degree,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of c_n* for algebras and generated ideals.
    Codim(commands::CodimArgs),
    /// Decide whether a polynomial is a *-identity of an algebra.
    Identity(commands::IdentityArgs),
    /// Print *-Capelli polynomials.
    Capelli(commands::CapelliArgs),
    /// Run a verification suite.
    Verify(commands::VerifyArgs),
    /// *-exponent of an algebra.
    Exponent(commands::ExponentArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thresholds,
    SimpleWitnesses,
    DirectSum,
    TidealContainment,
    Exponents,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let common = &cli.common;
    let result = match &cli.command {
        Command::Codim(a) => commands::codim(a, common),
        Command::Identity(a) => commands::identity(a, common),
        Command::Capelli(a) => commands::capelli(a),
        Command::Verify(a) => commands::verify(a, common),
        Command::Exponent(a) => commands::exponent(a),
    };
    match result.and_then(|r| r.emit(common.format, common.out.as_deref()).map(|()| r.status)) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Refused) => ExitCode::from(2),
        Ok(Status::Failed) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cost_guard() { 2 } else { 1 })
        }
    }
}
