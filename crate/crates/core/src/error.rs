use thiserror::Error;

/// Errors shared by all toolkit modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("kronecker(0, 0) is undefined")]
    KroneckerUndefined,

    #[error("sieve limit {limit} outside supported range [2, {max}]")]
    SieveLimit { limit: u64, max: u64 },

    #[error("modulus must be odd and positive, got {k}")]
    OddModulusRequired { k: i64 },

    #[error("naive Gauss sum is capped at k <= {cap}, got {k}")]
    NaiveCapExceeded { k: u64, cap: u64 },

    #[error("invalid window: {reason}")]
    InvalidWindow { reason: String },

    #[error("quadrature did not converge after {panels} panels (tol {tol:e})")]
    QuadratureUnconverged { panels: usize, tol: f64 },

    #[error("d = {d} must be odd, positive and square-free")]
    InvalidD { d: u64 },

    #[error("oracle budget exceeded: X*Y = {xy:.3e} > {budget:.3e}; use the sieved strategy")]
    OracleBudget { xy: f64, budget: f64 },

    #[error("scales out of range: need X >= 1 and Y >= 1 (X = {x}, Y = {y})")]
    ScaleOutOfRange { x: f64, y: f64 },

    #[error("precision budget exceeded: X*Y^2 = {value:.3e} is not exactly summable in f64")]
    PrecisionBudget { value: f64 },

    #[error("tail bound {bound:.3e} exceeds 1e-6 at k_max = {k_max}; increase k_max")]
    TailBoundTooLarge { bound: f64, k_max: u64 },

    #[error("prime expected: {p} is not an odd prime")]
    NotAnOddPrime { p: u64 },

    #[error("Euler product parameters invalid: {reason}")]
    InvalidEulerInput { reason: String },

    #[error("theorem region violated: require Y <= X <= Y^2, got X = {x}, Y = {y}")]
    RegionViolation { x: f64, y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
