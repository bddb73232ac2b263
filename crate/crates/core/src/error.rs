use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A digit that the computation needs lies beyond the known window of a
    /// truncated expansion.
    #[error("precision exhausted: digit {index} is outside the known window")]
    Precision { index: i64 },

    #[error("incompatible bases {left} and {right}")]
    IncompatibleBase { left: u32, right: u32 },

    #[error("non-expandable denominator {denominator} in base {base}")]
    NonExpandableDenominator { denominator: i128, base: u32 },

    #[error("{base}^{depth} overflows 128-bit residues; a big-integer enumeration is required")]
    Overflow { base: u32, depth: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown preset `{name}`; available presets: {}", available.join(", "))]
    UnknownPreset { name: String, available: Vec<String> },

    #[error("degenerate scale window: {0}")]
    DegenerateWindow(String),

    #[error("parameters are not certified as an embedding: {0}")]
    NotCertified(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
