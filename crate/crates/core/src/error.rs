use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidSpec(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
    #[error("support is infinite; an exact scan needs finite supports")]
    InfiniteSupport,
    #[error("likelihood profile on an infinite support needs k_cap for this pair")]
    UnboundedProfile,
    #[error("no closed form for the pair ({0}, {1})")]
    UnsupportedPair(&'static str, &'static str),
    #[error("{0} outside the domain of the closed form")]
    OutOfDomain(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid occupancy (a1={a1}, a2={a2}, n1={n1}, n2={n2})")]
    InvalidOccupancy { a1: u64, a2: u64, n1: u64, n2: u64 },
    #[error("coupling preconditions violated: {0}")]
    ConditionsViolated(String),
    #[error("family {0} has no Lévy characteristics here")]
    UnsupportedFamily(&'static str),
    #[error("parameter order: {0}")]
    ParameterOrder(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
