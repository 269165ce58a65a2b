use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The shift register would start at its fixed point.
    #[error("shift register seed must be nonzero")]
    ZeroJsrSeed,

    #[error(
        "multiply-with-carry state {state:#010x} is invalid for multiplier {multiplier}: {reason}"
    )]
    InvalidMwcState {
        multiplier: u32,
        state: u32,
        reason: &'static str,
    },

    #[error("unsupported ziggurat table size {0} (expected 64 or 128)")]
    UnsupportedTableSize(usize),

    #[error("ziggurat root finding did not converge: {0}")]
    NoConvergence(String),

    #[error("preimage counter saturated at output {output:#010x}")]
    CounterSaturation { output: u32 },

    #[error("invalid chunk count {chunks} for a {bits}-bit census")]
    InvalidChunks { chunks: u32, bits: u32 },

    #[error("census width must be between 1 and 32 bits, got {0}")]
    InvalidWidth(u32),

    #[error("bin edges must be strictly increasing and nonnegative")]
    InvalidEdges,

    #[error("bin {bin} has expected count {expected:.3} < 5")]
    EmptyBin { bin: usize, expected: f64 },

    #[error("counts sum to {actual} but {expected} trials were declared")]
    TrialMismatch { expected: u64, actual: u64 },

    #[error("probability vector and deviation vector differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("deviated distribution does not sum to one (sum = {0})")]
    NotNormalized(f64),

    #[error("all deviations are zero; no finite detection sample size")]
    NoDeviations,

    #[error("need at least {required} distinct nonzero seeds, got {got}")]
    NotEnoughSeeds { required: usize, got: usize },

    #[error("malformed generator state: {0}")]
    MalformedState(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
