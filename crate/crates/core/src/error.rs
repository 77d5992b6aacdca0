use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not diagonalizable within tolerance (residual {residual:e})")]
    NonDiagonalizable { residual: f64 },
    #[error("eigenvalue {re:e}{im:+e}i lies on the branch cut (-inf, 0]")]
    BranchCutEigenvalue { re: f64, im: f64 },
    #[error("logarithm of a singular matrix (|lambda| = {modulus:e})")]
    LogOfSingular { modulus: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("QR iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("invalid mode window: {0}")]
    InvalidWindow(String),
    #[error("Matsubara frequency vanishes (bosonic n = 0)")]
    ZeroFrequency,

    #[error("chi vanishes: momentum has omega_k = 0")]
    ZeroChi,
    #[error("artanh pole: chi = {re:e}{im:+e}i is too close to +-1")]
    ArtanhPole { re: f64, im: f64 },
    #[error("boosted spinors require m > 0")]
    MasslessSpinor,
    #[error("pseudo-density matrix is singular (|lambda| = {modulus:e})")]
    SingularRho { modulus: f64 },
    #[error("product decomposition residual {residual:e} exceeds tolerance")]
    DecompositionFailure { residual: f64 },

    #[error("pole of zeta(s) at s = 1")]
    PoleAtOne,
    #[error("Hurwitz parameter a = {0} must be positive")]
    InvalidA(f64),
    #[error("Bernoulli order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("digamma pole at non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("analytic continuation hits a pole at {location}")]
    PoleDetected { location: f64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("extrapolation unstable: {0}")]
    ExtrapolationUnstable(String),
    #[error("integral or sum does not converge: {0}")]
    NonConvergent(String),
    #[error("tail estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    TailEstimateFailure { estimate: f64, tolerance: f64 },
}
