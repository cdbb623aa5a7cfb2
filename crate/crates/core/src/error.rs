use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("image of seed `{seed}` does not start with it or has length 1")]
    NotProlongable { seed: String },
    #[error("fixed-point iteration stalled at {reached} letters (requested {requested})")]
    Stagnation { reached: usize, requested: usize },
    #[error("periodic pattern is empty")]
    EmptyPattern,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("iterate {step} is within 2^-{margin_bits} of a discontinuity")]
    PrecisionExhausted { step: usize, margin_bits: u32 },
    #[error("length cap {cap} exceeds word length {len}")]
    CapExceedsWord { cap: usize, len: usize },
    #[error("order {n} is outside the indexed window (cap {cap})")]
    OutOfWindow { n: usize, cap: usize },
    #[error("morphism is not primitive")]
    NotPrimitive,
    #[error("dominant eigenvalue is not a rational integer or a quadratic irrational")]
    UnsupportedEigenvalueDegree,
    #[error("no frequency for factor `{0}`")]
    MissingFrequency(String),
    #[error("window language differs from the exact language at length {n}: {detail}")]
    WindowMismatch { n: usize, detail: String },
    #[error("window is not recurrent at order {n}: {detail}")]
    NonRecurrentWindow { n: usize, detail: String },
    #[error("no left or right special vertex at order {n}")]
    Degenerate { n: usize },
    #[error("language is not closed under reversal: `{witness}` has no mirror image")]
    NotReversalClosed { witness: String },
    #[error("language is not closed under the letter permutation: image `{witness}` is not a factor")]
    NotClosedUnderPermutation { witness: String },
    #[error("edge labels along a simple path disagree: {0}")]
    LabelInconsistent(String),
    #[error("window is not Sturmian at length {n} (C = {complexity})")]
    NotSturmianWindow { n: usize, complexity: usize },
    #[error("scan is inconclusive: {0}")]
    Inconclusive(String),
    #[error("no exact frequency engine available for this source")]
    NoExactEngine,
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
