use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{function}: argument {value} outside domain {domain}")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A construction parameter violates its invariant.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// An iterative method stopped before meeting its tolerance.
    #[error("no convergence after {iterations} sweeps (matrix norm {norm:e}, off-diagonal residual {off_diagonal:e})")]
    NoConvergence {
        iterations: usize,
        norm: f64,
        off_diagonal: f64,
    },

    /// Richardson extrapolation of an endpoint limit did not settle.
    #[error("endpoint extrapolation for n = {n} unstable: successive estimates {previous:e} and {last:e}")]
    Extrapolation { n: usize, previous: f64, last: f64 },

    /// An eigenfunction index lies in the unreliable tail of the decomposition.
    #[error("eigenfunction index {index} outside usable range 0..{usable}")]
    IndexOutOfRange { index: usize, usable: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
