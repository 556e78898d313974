use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported torus rank {0} (at most {max} coordinates)", max = crate::lattice::MAX_RANK)]
    UnsupportedRank(usize),

    #[error("no finite scale k puts the polytope inside k times the reference polytope")]
    NoFiniteScale,

    #[error("representation family `{0}` has no group action")]
    NoGroupAction(String),

    #[error("requires factored input: {0}")]
    RequiresFactoredInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
