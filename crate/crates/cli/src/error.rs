use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values; exit 2.
    Config(String),
    /// A census counter reached 255; exit 3.
    Saturation(String),
    /// Anything else that stopped the run; exit 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Saturation(_) => 3,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Saturation(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<rngfx::Error> for CliError {
    fn from(e: rngfx::Error) -> Self {
        use rngfx::Error::*;
        let msg = e.to_string();
        match e {
            CounterSaturation { .. } => CliError::Saturation(msg),
            ZeroJsrSeed
            | InvalidMwcState { .. }
            | UnsupportedTableSize(_)
            | InvalidChunks { .. }
            | InvalidWidth(_)
            | InvalidEdges
            | NotEnoughSeeds { .. }
            | MalformedState(_)
            | Unknown { .. } => CliError::Config(msg),
            NoConvergence(_)
            | EmptyBin { .. }
            | TrialMismatch { .. }
            | LengthMismatch(..)
            | NotNormalized(_)
            | NoDeviations => CliError::Failed(msg),
        }
    }
}
