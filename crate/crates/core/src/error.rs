use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("tridiagonal eigensolver did not converge for eigenvalue {index} after {sweeps} sweeps")]
    EigensolverFailure { index: usize, sweeps: usize },

    #[error("quadrature order {have} is below the required {need}")]
    InsufficientQuadratureOrder { have: usize, need: usize },

    #[error("multiplier is negative ({value:e}) at node {node}")]
    NegativeMultiplier { node: f64, value: f64 },

    #[error("incompatible weight: {0}")]
    IncompatibleWeight(String),

    #[error("degree {n} out of range (available < {max})")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("discrete norm of basis member {index} vanishes")]
    ZeroDiscreteNorm { index: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("operator does not match basis: {0}")]
    MismatchedOperator(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("eps = {0:e} is too small for the hyperbola map; use eps = 0")]
    LOverflow(f64),

    #[error("evaluation at t = 0 is singular")]
    SingularEvaluation,

    #[error("empty arc: h = {0}")]
    EmptyArc(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
