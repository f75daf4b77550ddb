use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants are split by who is at fault: `Internal` means a mathematical
/// identity that is a theorem failed to hold, which signals a bug in this
/// crate, never bad input.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("invalid Lie context: {0}")]
    InvalidContext(String),

    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("elements belong to different contexts")]
    ContextMismatch,

    #[error("operators do not commute")]
    NotCommuting,

    #[error("group elements do not commute")]
    NotCommutingPair,

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("relator {index} is not sent to the identity")]
    RelatorViolated { index: usize },

    #[error("presentation has no boundary words")]
    NoBoundary,

    #[error("boundary circle {index}: supplied element is not conjugate to the monodromy as required")]
    BoundaryClassMismatch { index: usize },

    #[error("sphere dimension must be at least 1")]
    SphereDimension,

    #[error("presentation is not a closed-surface presentation: {0}")]
    NotSurfacePresentation(String),

    #[error("duality pairing is degenerate: {0}")]
    DegeneratePairing(String),

    #[error("pair is not strict (direct: {direct}, complex: {complex}, phi: {phi})")]
    NonStrictPair {
        direct: bool,
        complex: bool,
        phi: bool,
    },

    #[error("unsupported family for this group: {0}")]
    UnsupportedFamily(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
