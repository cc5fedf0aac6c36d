use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("denominator not invertible mod {prime}")]
    BadPrime { prime: u64 },
    #[error("singular block at vertex {vertex}")]
    SingularBlock { vertex: usize },
    #[error("path is not composable at step {step}")]
    BadPath { step: usize },
    #[error("missing assignment for a variable")]
    MissingAssignment,
    #[error("mixed denominators: substitution images track two distinct determinants")]
    MixedDenominators,
    #[error("clearing power {given} below required power {needed}")]
    ClearingPower { given: u32, needed: u32 },
    #[error("subspace enumeration too large: {size} tuples exceeds cap {cap}")]
    EnumerationCap { size: u128, cap: u128 },
    #[error("isomorphism search exhausted {trials} trials without a decision")]
    IsoInconclusive { trials: usize },
    #[error("stability verdict inconclusive: {0}")]
    Inconclusive(String),
    #[error("rank did not stabilize after {samples} samples")]
    RankUnstable { samples: usize },
    #[error("degree bound required: the admissible degree polytope is unbounded (quiver has an oriented cycle)")]
    DegreeBoundRequired,
    #[error("{0}")]
    Precondition(String),
    #[error("factor matched {matches} candidate components; decomposition inconclusive")]
    AmbiguousFactor { matches: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
