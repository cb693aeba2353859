use num_bigint::BigInt;
use thiserror::Error;

/// Errors surfaced by the invariant pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input file does not conform to the presentation format.
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// Generator count does not match relator count.
    #[error("unbalanced presentation: genus {genus} but {relators} relators")]
    Unbalanced { genus: usize, relators: usize },

    /// A word refers to a generator index outside [1, genus].
    #[error("generator index {index} out of range 1..={genus} (line {line}, column {col})")]
    GeneratorOutOfRange {
        index: usize,
        genus: usize,
        line: usize,
        col: usize,
    },

    /// The presentation abelianizes to a finite group; the invariants
    /// here are only defined for first Betti number at least one.
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    /// With b1 = 1 the Alexander polynomial must augment to the torsion
    /// order up to sign; this input does not.
    #[error("normalization failure: |A(1)| = {augmentation} but |Tors| = {torsion_order}")]
    NormalizationFailure {
        augmentation: BigInt,
        torsion_order: BigInt,
    },

    /// Handle slide with identical source and target index.
    #[error("invalid handle slide: source and target index {0} coincide")]
    InvalidSlide(usize),

    /// Minor index outside the matrix.
    #[error("minor index ({row}, {col}) out of range for a {size}x{size} matrix")]
    MinorIndex { row: usize, col: usize, size: usize },

    /// Operation requires a pinned (symmetrized) Alexander representative.
    #[error("translation-unpinned Alexander polynomial: {0}")]
    Unpinned(String),

    /// Operation only defined for the stated first Betti number.
    #[error("operation requires b1 = {expected}, input has b1 = {actual}")]
    WrongRank { expected: usize, actual: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
