use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    // --- linear algebra ---
    #[error("dimension mismatch: {context} (left {left}, right {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite value at index {index}")]
    NotFinite { index: usize },
    #[error("power iteration did not converge after {iterations} iterations")]
    DidNotConverge { iterations: usize },
    #[error("matrix is zero; no dominant singular direction")]
    ZeroMatrix,

    // --- semantic spaces ---
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("bad token `{0}`: expected lowercase `lemma_POS`")]
    BadToken(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    // --- tensor construction ---
    #[error("no usable rows for `{word}` ({skipped} skipped as out-of-vocabulary)")]
    NoUsableRows { word: String, skipped: usize },
    #[error("mixed prepositions in phrasal-verb rows: `{first}` vs `{other}`")]
    MixedPreposition { first: String, other: String },
    #[error("occurrence rows disagree with role signature: {0}")]
    BadOccurrence(String),

    // --- clustering / senses ---
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("k={k} invalid for {n} points")]
    BadK { k: usize, n: usize },

    // --- disambiguation ---
    #[error("no trained tensor for `{0}`")]
    MissingTensor(String),
    #[error("no sense inventory for `{0}`")]
    MissingInventory(String),
    #[error("no sense tensor for `{word}` sense {sense}")]
    MissingSenseTensor { word: String, sense: usize },
    #[error("context id `{0}` not covered by the sense inventory")]
    UncoveredContext(String),

    // --- regression ---
    #[error("loss became non-finite at epoch {epoch}")]
    Diverged { epoch: usize },

    // --- density matrices ---
    #[error("bad ensemble: {0}")]
    BadEnsemble(String),
    #[error("operator trace {trace} too small to renormalize")]
    ZeroTrace { trace: f64 },
    #[error("state vector is not unit length (norm {norm})")]
    NotNormalized { norm: f64 },

    // --- evaluation ---
    #[error("score lists differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("ranks are degenerate: all values in the {which} list are equal")]
    DegenerateRanks { which: &'static str },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("dataset entry `{id}`: {message}")]
    BadEntry { id: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
