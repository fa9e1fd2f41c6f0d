use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Domain(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the valuation of 0 is undefined")]
    ZeroValuation,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{what} exceeds the supported bound {bound}")]
    BoundExceeded { what: &'static str, bound: u64 },
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("window of {window} entries exhausted; retry with a larger window")]
    WindowExhausted { window: usize },
    #[error("vertex 2^{level}(m-1)+{residue} undecided at the depth bound")]
    TreeUndecided { level: u32, residue: u64 },
    #[error("quadrature did not reach tolerance {tol:e} (last difference {diff:e})")]
    NoConvergence { tol: f64, diff: f64 },
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = core::result::Result<T, Error>;
