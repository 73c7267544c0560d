use soliton_forge::{AbelError, DubrovinError, EllipticError, KdvError, NlsError, SpectralError, SymmetryError};

/// Process exit codes. Listed in `--help`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Usage = 2,
    Degenerate = 3,
    Config = 4,
    Io = 5,
    Numeric = 6,
    CheckFailed = 7,
}

pub const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  bad flags or unsupported --format
  3  degenerate spectral curve, nonreal auxiliary spectrum or colliding points
  4  invalid configuration (file, ranges, start points, grid)
  5  I/O failure
  6  numerical failure (step-size underflow, CFL violation)
  7  a verification check failed

Environment:
  SOLITON_FORGE_THREADS  worker threads for parallel trials and checks";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{failed} of {total} checks failed")]
    CheckFailed { failed: usize, total: usize },
}

fn spectral_exit(e: &SpectralError) -> Exit {
    match e {
        SpectralError::DegenerateCurve(_) | SpectralError::ComplexAuxSpectrum(_) => Exit::Degenerate,
        SpectralError::Invalid(_) | SpectralError::DiffPoly(_) => Exit::Config,
    }
}

/// Maps an error chain to its exit code.
pub fn classify(err: &anyhow::Error) -> Exit {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return match e {
                CliError::Usage(_) => Exit::Usage,
                CliError::Config(_) => Exit::Config,
                CliError::CheckFailed { .. } => Exit::CheckFailed,
            };
        }
        if let Some(e) = cause.downcast_ref::<SpectralError>() {
            return spectral_exit(e);
        }
        if let Some(e) = cause.downcast_ref::<DubrovinError>() {
            return match e {
                DubrovinError::CollisionError { .. } => Exit::Degenerate,
                DubrovinError::Spectral(s) => spectral_exit(s),
                DubrovinError::InvalidStart(_) | DubrovinError::InvalidGrid(_) => Exit::Config,
                DubrovinError::StepFailure(_) | DubrovinError::CflViolation(_) => Exit::Numeric,
            };
        }
        if let Some(e) = cause.downcast_ref::<AbelError>() {
            return match e {
                AbelError::CollisionError { .. } => Exit::Degenerate,
                _ => Exit::Config,
            };
        }
        if cause.is::<EllipticError>()
            || cause.is::<KdvError>()
            || cause.is::<NlsError>()
            || cause.is::<SymmetryError>()
            || cause.is::<serde_json::Error>()
        {
            return Exit::Config;
        }
        if cause.is::<std::io::Error>() {
            return Exit::Io;
        }
    }
    Exit::Numeric
}
