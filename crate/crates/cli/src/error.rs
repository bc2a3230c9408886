use cayley_spectra::spectrum::SpectrumError;
use cayley_spectra::splitting::SplittingError;
use thiserror::Error;

use crate::parse::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error("verification failed: {0} counterexample(s)")]
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => EXIT_USAGE,
            CliError::Spectrum(_) | CliError::Splitting(_) => EXIT_VALIDATION,
            CliError::Verification(_) => EXIT_VERIFICATION,
        }
    }
}
