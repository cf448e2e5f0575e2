use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation size must be at least 1")]
    EmptyPermutation,
    #[error("simple transposition index {index} out of range for n = {n}")]
    LetterOutOfRange { index: usize, n: usize },
    #[error("u = {u} is not below v = {v} in Bruhat order")]
    NotComparable { u: String, v: String },
    #[error("size guard exceeded: n = {n} > {max} (set POSITROID_MAX_N to override)")]
    GuardExceeded { n: usize, max: usize },
    #[error("malformed pipe dream: {0}")]
    MalformedDream(String),
    #[error("expected a complete pipe dream, got {rows} rows and {cols} columns")]
    NotComplete { rows: usize, cols: usize },
    #[error("pipe dream is not Γ-free")]
    NotGammaFree,
    #[error("not a flag positroid pipe dream")]
    NotFpp,
    #[error("pivot columns are not decreasing")]
    NotDecreasing,
    #[error("pivot sequence has more than one ascent")]
    TooManyAscents,
    #[error("row index {0} out of range")]
    RowOutOfRange(usize),
    #[error("column set C is empty")]
    EmptyC,
    #[error("column {0} is not unblocked")]
    NotUnblocked(usize),
    #[error("rank {0} positroid has no upward covers")]
    FullRank(usize),
    #[error("not a matroid: {0}")]
    NotMatroid(String),
    #[error("ground sets differ")]
    GroundSetMismatch,
    #[error("not an elementary representable quotient")]
    NotRepresentableCover,
    #[error("membership violated: {0}")]
    Membership(String),
    #[error("invalid decorated permutation: {0}")]
    InvalidDecoration(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("not a generalized permutation matrix")]
    NotGeneralizedPermutation,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("rank deficient: no nonzero {0}x{0} minor in the first {0} rows")]
    RankDeficient(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
