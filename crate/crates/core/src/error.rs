use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("image of `{var}` is `{image}`, which is not a unit monomial but a negative exponent needs its inverse")]
    NonInvertibleImage { var: String, image: String },

    #[error("exponential series of the derivation does not terminate on `{poly}` within {cap} iterations")]
    NotLocallyNilpotentAt { poly: String, cap: usize },

    #[error("out of window: {0}")]
    OutOfWindow(String),

    #[error("image of monomial `{monomial}` escapes the target window")]
    TargetOverflow { monomial: String },

    #[error("candidate power {0} is not in the subspace, no falsification certificate exists")]
    NotInRadical(u32),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("search budget exceeded: {needed} elements, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("idempotent enumeration over Q is only supported for declared split-product algebras")]
    UnsupportedOverQ,

    #[error("algebra is not commutative: e{0}*e{1} != e{1}*e{0}")]
    NotCommutative(usize, usize),

    #[error("algebra is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("characteristic polynomial does not split: found roots covering {split_dim} of {dim} dimensions")]
    NonSplit { split_dim: usize, dim: usize },

    #[error("assembled image differs from direct image: {0}")]
    DecompositionMismatch(String),

    #[error("characteristic {p} is too small for {n} power sums")]
    CharacteristicTooSmall { p: u64, n: usize },

    #[error("zero polynomial has no support")]
    ZeroPolynomial,

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("negative exponent on `{0}` without a Laurent ambient")]
    NegativeExponentWithoutLaurent(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
