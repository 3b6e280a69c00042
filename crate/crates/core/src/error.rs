use thiserror::Error;

/// Errors raised by the kinematic, geometric and dynamical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid masses: {0}")]
    InvalidMasses(String),
    #[error("collinear configuration (|sin phi| = {sin_phi:e})")]
    CollinearConfiguration { sin_phi: f64 },
    #[error("collisional pair: particles {0} and {1} coincide")]
    CollisionalPair(usize, usize),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("no democracy rotation maps the pairs (residual {residual:e})")]
    NoSuchRotation { residual: f64 },
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    #[error("frame orthogonality drifted to {drift:e}; reduce the step")]
    StepTooLarge { drift: f64 },
    #[error("potential domain error: {0}")]
    PotentialDomain(String),
    #[error("state is not planar (off-normal angular momentum {off_normal:e})")]
    NonPlanarState { off_normal: f64 },
    #[error(
        "implicit midpoint did not converge after {iterations} iterations (update {update:e})"
    )]
    ConvergenceFailure { iterations: usize, update: f64 },
    #[error("state left the configuration domain: {0}")]
    DomainExit(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
