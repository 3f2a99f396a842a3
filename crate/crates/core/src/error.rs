use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A dimension was zero where at least one is required.
    InvalidDimension(&'static str),
    /// Two operands disagree in size.
    DimensionMismatch { expected: usize, found: usize },
    /// `E_k = 0`: coherence coefficients are undefined.
    DegeneratePoint { k: f64 },
    /// `n_c == n_v`: the strict minimum inequalities have no sign.
    IndeterminateSign,
    /// Argument outside the domain of a closed form or physical relation.
    Domain(&'static str),
    /// Adaptive quadrature hit its subdivision cap.
    QuadratureNonConvergence { estimate: f64, error: f64, intervals: usize },
    /// Invalid model or run parameter.
    InvalidParameter(&'static str),
    /// Time stepping lost stability.
    IntegratorFailure { time: f64, norm_drift: f64 },
    /// The continuum solution is only implemented at exact resonance.
    UnsupportedRegime(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension(what) => write!(f, "invalid dimension: {what}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DegeneratePoint { k } => {
                write!(f, "degenerate point E_k = 0 at k = {k}")
            }
            Error::IndeterminateSign => {
                write!(f, "n_c == n_v: minimum conditions are indeterminate")
            }
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::QuadratureNonConvergence { estimate, error, intervals } => write!(
                f,
                "quadrature did not converge: estimate {estimate:e}, error {error:e} after {intervals} intervals"
            ),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::IntegratorFailure { time, norm_drift } => {
                write!(f, "integrator failure at t = {time}: norm drift {norm_drift:e}; use a smaller dt")
            }
            Error::UnsupportedRegime(what) => write!(f, "unsupported regime: {what}"),
        }
    }
}

impl core::error::Error for Error {}
