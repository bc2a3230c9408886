//! Command-line front end for the `cayley_spectra` library.

pub mod error;
pub mod output;
pub mod parse;
pub mod verify;

use std::ffi::OsString;

use cayley_spectra::group::euler_phi;
use cayley_spectra::splitting::{
    algebraic_degree, enumerate_integral_sets, is_integral_exact, splitting_field_report,
    DEFAULT_ENUMERATION_CAP,
};
use clap::{Parser, ValueEnum};

pub use error::CliError;
use error::{EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};
use output::{emit, CharPolyReport, DegreeReport, IntegralReport, Report};
use parse::{parse_group_spec, parse_set_spec};
use verify::{run_verify, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Exact eigenvalues, one per group element
    Spectrum,
    /// Characteristic polynomial of the Hermitian adjacency matrix
    Charpoly,
    /// Degree of the splitting field over Q
    Degree,
    /// Stabilizer, coset representatives and a primitive element
    SplittingField,
    /// Whether every eigenvalue is an integer
    Integral,
    /// Every integral mixed Cayley graph on the group
    EnumerateIntegral,
    /// Cross-check all connection sets on all small groups
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "cayley-spectra", version, about = "Exact spectra of mixed Cayley graphs on finite abelian groups")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Group as `Z4xZ3` or `4,3`
    #[arg(long, value_name = "SPEC")]
    pub group: Option<String>,

    /// Undirected part, e.g. `(1,0),(3,0)`
    #[arg(long = "A", value_name = "ELEMS", allow_hyphen_values = true)]
    pub a: Option<String>,

    /// Directed part
    #[arg(long = "B", value_name = "ELEMS", allow_hyphen_values = true)]
    pub b: Option<String>,

    /// Whole connection set, split automatically into A and B
    #[arg(long = "S", value_name = "ELEMS", allow_hyphen_values = true, conflicts_with_all = ["a", "b"])]
    pub s: Option<String>,

    /// Print single-line JSON instead of a table
    #[arg(long)]
    pub json: bool,

    /// Convergence tolerance for numeric cross-checks
    #[arg(long, default_value_t = 1e-8, value_parser = positive_float)]
    pub tol: f64,

    /// Largest group order swept by `verify`
    #[arg(long = "max-order", default_value_t = 12)]
    pub max_order: u64,

    /// Worker threads for `verify` (default: one per core)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,

    /// Seed for the numeric samples drawn by `verify`
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Make `verify` corrupt one stabilizer so that it must report a failure
    #[arg(long = "self-test-negative")]
    pub self_test_negative: bool,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

impl Cli {
    fn reject_set_flags(&self) -> Result<(), CliError> {
        if self.a.is_some() || self.b.is_some() || self.s.is_some() {
            return Err(CliError::Usage(format!(
                "{} takes no connection set",
                self.command.to_possible_value().expect("no skipped variants").get_name()
            )));
        }
        Ok(())
    }
}

/// Runs the parsed command and returns its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    if cli.command == Command::Verify {
        cli.reject_set_flags()?;
        if cli.group.is_some() {
            return Err(CliError::Usage("verify sweeps all groups; use --max-order instead of --group".into()));
        }
        let opts = VerifyOptions {
            max_order: cli.max_order,
            seed: cli.seed,
            jobs: cli.jobs.map(|j| j as usize),
            tol: cli.tol,
            inject_fault: cli.self_test_negative,
        };
        let summary = run_verify(&opts)?;
        if opts.inject_fault && summary.total_sets() == 0 {
            return Err(CliError::Usage("--self-test-negative needs --max-order of at least 2".into()));
        }
        return Ok(Report::Verification(summary));
    }
    if cli.self_test_negative {
        return Err(CliError::Usage("--self-test-negative only applies to verify".into()));
    }
    let spec = cli.group.as_deref().ok_or_else(|| CliError::Usage("--group is required".into()))?;
    let group = parse_group_spec(spec)?;
    if cli.command == Command::EnumerateIntegral {
        cli.reject_set_flags()?;
        return Ok(Report::Enumeration(enumerate_integral_sets(&group, DEFAULT_ENUMERATION_CAP)?));
    }
    let cs = parse_set_spec(&group, cli.a.as_deref(), cli.b.as_deref(), cli.s.as_deref())?;
    Ok(match cli.command {
        Command::Spectrum => Report::Spectrum(cs.full_spectrum()),
        Command::Charpoly => Report::CharPoly(CharPolyReport { group, coeffs: cs.char_poly() }),
        Command::Degree => {
            let degree = algebraic_degree(&cs);
            let modulus = cs.spectral_modulus();
            Report::Degree(DegreeReport { modulus, stabilizer_order: euler_phi(modulus) / degree, degree })
        }
        Command::SplittingField => Report::SplittingField(splitting_field_report(&cs)),
        Command::Integral => {
            Report::Integral(IntegralReport { integral: is_integral_exact(&cs), degree: algebraic_degree(&cs) })
        }
        Command::EnumerateIntegral | Command::Verify => unreachable!("handled above"),
    })
}

/// Parses `args` (including the program name), runs the command, prints
/// the result and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = emit(&report, cli.json);
            if cli.json {
                println!("{text}");
            } else {
                print!("{text}");
            }
            match report {
                Report::Verification(s) if !s.passed() => {
                    eprintln!("error: {}", CliError::Verification(s.failures.len()));
                    EXIT_VERIFICATION
                }
                _ => EXIT_OK,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
