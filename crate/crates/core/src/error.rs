use thiserror::Error;

/// Everything that can go wrong while building series, evaluating
/// functionals or solving for a radius.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient {index} is not finite or exceeds the overflow limit ({value:e})")]
    Overflow { index: usize, value: f64 },

    #[error("series has no coefficients")]
    EmptySeries,

    #[error("argument {arg} outside the validity domain of the series (radius {limit})")]
    OutsideDomain { arg: f64, limit: f64 },

    #[error("series tail estimate {estimate:e} at r = {r} exceeds {tolerance:e} with order {order}")]
    TailNotConverged {
        order: usize,
        r: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("invalid Ma-Minda function: {0}")]
    InvalidPhi(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("quadrature did not converge on [{a}, {b}]; achieved error {achieved:e}")]
    Quadrature { a: f64, b: f64, achieved: f64 },

    #[error("no sign change on [{lo}, {hi}]: G(lo) = {g_lo:e}, G(hi) = {g_hi:e}")]
    NoRoot {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("root residual {residual:e} exceeds {limit:e}")]
    Residual { residual: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
