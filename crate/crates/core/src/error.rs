use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed family document: {0}")]
    Malformed(String),

    #[error("family has no member sets")]
    NoMembers,

    #[error("member set {member} is empty")]
    EmptyMember { member: usize },

    #[error("label {label:?} occurs twice in member set {member}")]
    DuplicateLabel { member: usize, label: String },

    #[error("family has {0} members; at most {max} are supported", max = crate::bitset::MAX_MEMBERS)]
    TooManyMembers(usize),

    #[error("valuation has {got} entries but the family has {expected} members")]
    ValuationLength { expected: usize, got: usize },

    #[error("valuation entry {index} is {value}; entries must be at least 1")]
    NonPositiveWeight { index: usize, value: usize },

    #[error("index set is empty")]
    EmptyIndexSet,

    #[error("index set refers to member {index} but the family has {n} members")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("element {element} is outside the ground set of size {m}")]
    ElementOutOfRange { element: usize, m: usize },

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("the two elements of a pair must differ")]
    SameElement,

    #[error("family is not a valued ({t}, n)-family for the given valuation")]
    NotValued { t: usize },

    #[error("invalid search parameters: {0}")]
    InvalidSearch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
