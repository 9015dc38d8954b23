use thiserror::Error;

/// Failures raised by kernel, operator and region evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("potential kernel diverges on the diagonal (sigma = {sigma}, threshold = {threshold})")]
    Divergent { sigma: f64, threshold: f64 },
    #[error("point too close to the diagonal for a singular kernel (|x-y| = {dist:e})")]
    NearDiagonal { dist: f64 },
    #[error("series truncation insufficient: tail bound {tail:e} exceeds tolerance {tol:e}")]
    Truncation { tail: f64, tol: f64 },
    #[error("quadrature tolerance not met: estimate {estimate:e} exceeds {tol:e}")]
    Tolerance { estimate: f64, tol: f64 },
    #[error("unsupported sphere dimension n = {0} (only 1, 2, 3)")]
    UnsupportedSphere(usize),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
