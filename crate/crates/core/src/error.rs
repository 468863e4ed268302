use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is not invertible: lowest term {0}")]
    NotAUnit(String),
    #[error("cannot invert an exact (untruncated) series without a target order")]
    UnboundedInverse,
    #[error(
        "coefficient of q^{requested} requested but the series is only exact through q^{order}"
    )]
    OrderExceeded { requested: i64, order: i64 },
    #[error("infinite product with base 1 vanishes identically")]
    DivergentProduct,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("term evaluated outside its domain at (n, k) = ({n}, {k})")]
    DomainError { n: i64, k: i64 },
    #[error("certificate has a pole at grid point (n, k) = ({n}, {k})")]
    PoleOnGrid { n: i64, k: i64 },
    #[error("no certificate found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
