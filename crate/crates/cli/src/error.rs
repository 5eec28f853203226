use std::fmt;

/// Failure of a run, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid flags, config file or input data. Exit code 2.
    Config(String),
    /// The numerics failed for a valid configuration. Exit code 3.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(m) => write!(f, "config error: {m}"),
            Self::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<reservo_core::Error> for CliError {
    fn from(e: reservo_core::Error) -> Self {
        use reservo_core::Error as E;
        match e {
            E::InvalidParameter { .. }
            | E::NegativeRate(_)
            | E::DegenerateHamiltonian
            | E::NonPositiveFrequency(_)
            | E::UnsupportedMethod(_) => Self::Config(e.to_string()),
            _ => Self::Numeric(e.to_string()),
        }
    }
}
