use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("cover {lower} -> {upper} skips a rank level (ranks {lower_rank} and {upper_rank})")]
    NotGraded {
        lower: usize,
        upper: usize,
        lower_rank: usize,
        upper_rank: usize,
    },
    #[error("cover {0} -> {1} listed more than once")]
    DuplicateCover(usize, usize),
    #[error("element index {index} out of range for a poset with {size} elements")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("{what} exceeds the configured limit {limit} (raise the cap to override)")]
    SizeLimitExceeded { what: String, limit: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("flag enumeration would produce {count} flags, above the cap {limit} (set FLAGALG_MAX_FLAGS to override)")]
    EnumerationLimitExceeded { count: u128, limit: u64 },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("incidence functions live on different posets")]
    PosetMismatch,
    #[error("arity {0} is not supported (incidence algebras need arity at least 2)")]
    InvalidArity(usize),
    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("multi-index {0:?} is not weakly increasing")]
    InvalidMultiIndex(Vec<usize>),
    #[error("tuple {0:?} is not a flag of this poset")]
    FlagNotInPoset(Vec<usize>),
    #[error("poset has no unique minimal element")]
    NotBoundedBelow,
    #[error("poset is not bounded (needs a unique minimal and a unique maximal element)")]
    NotBounded,
    #[error("poset is not a lattice")]
    NotLattice,
    #[error("cannot shift constant {c} by {s}")]
    InvalidShift { s: u32, c: u32 },
    #[error("index family size {k} exceeds the cap {cap}")]
    CapExceeded { k: usize, cap: usize },
    #[error("malformed index term: {0}")]
    MalformedTerm(String),
    #[error("rank {rank} too small: {detail}")]
    RankTooSmall { rank: usize, detail: String },
    #[error("Kazhdan-Lusztig recursion inconsistent at element {element}: {detail}")]
    InconsistentRecursion { element: usize, detail: String },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors raised because a configured cap was hit rather than because the
    /// input is wrong.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::SizeLimitExceeded { .. }
                | Error::EnumerationLimitExceeded { .. }
                | Error::CapExceeded { .. }
        )
    }
}
