use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {free} free vertices, limit {limit}")]
    Budget { free: usize, limit: usize },

    #[error("pinned configuration is infeasible")]
    Infeasible,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("marginal ratio undefined: both restricted partition functions vanish")]
    UndefinedRatio,

    #[error("pole in recursion: {0}")]
    Pole(String),

    #[error("argument {0} lies on the branch cut of the potential")]
    BranchCut(String),

    #[error("closed form hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("not a tree")]
    NotATree,

    #[error("hypergraph incidence structure has a cycle")]
    Cyclic,

    #[error("graph is not bipartite with the declared sides")]
    NotBipartite,

    #[error("parameters do not match the requested regime: {0}")]
    CaseMismatch(String),

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
