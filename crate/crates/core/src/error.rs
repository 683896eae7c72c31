use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("normalization violated: {0}")]
    Normalization(String),
    #[error("generators span a {found}-dimensional subspace of the {expected}-dimensional ambient space")]
    DegenerateSpan { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("party {party}: point is not a state of `{label}`")]
    Membership { party: usize, label: String },
    #[error("simple basis elements are linearly dependent: rank {rank}, expected {expected}")]
    RankDeficiency { expected: usize, rank: usize },
    #[error("factorization disagrees with the multilinear extension at probe {probe}")]
    FactorizationMismatch { probe: usize },
    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,
    #[error("certificate failed verification: {0}")]
    Certificate(String),
    #[error("invalid rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },
}
