use core::fmt;

/// Errors surfaced by the computational modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An adaptive scheme exhausted its budget with the error estimate above
    /// tolerance. Carries the best value norm and the remaining error.
    NonConvergence { estimate: f64, error: f64 },
    /// A semi-infinite integral was requested for a decay exponent <= 1.
    DecayTooSlow { exponent: f64 },
    /// Pointwise evaluation of a distributional field family was requested.
    AnalyticOnlyFamily,
    /// The pair (x, xi) passed to the circulation integral is not orthogonal.
    NotOrthogonal { inner: f64 },
    /// A finite-difference spot check found curl A^(inf) != 0 away from the
    /// origin, which signals a long-range field (r <= 2).
    CurlNotZero { residual: f64 },
    /// A contour for the gauge scalar U would pass through the origin.
    ContourThroughOrigin,
    /// Off-diagonal kernel evaluation requested on the diagonal.
    DiagonalEvaluation,
    /// torus_kappa was asked for a z outside the tangency range [z1, z2].
    OutsideTangencyRange { z: f64, z1: f64, z2: f64 },
    /// A configuration value violates its invariant.
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergence { estimate, error } => write!(
                f,
                "quadrature did not converge: estimate {estimate:e}, error {error:e}"
            ),
            Error::DecayTooSlow { exponent } => write!(
                f,
                "tail decay exponent {exponent} <= 1: semi-infinite integral may diverge"
            ),
            Error::AnalyticOnlyFamily => {
                write!(f, "field family is distributional; use its analytic branch")
            }
            Error::NotOrthogonal { inner } => {
                write!(f, "<x, xi> = {inner:e} is not zero within tolerance")
            }
            Error::CurlNotZero { residual } => write!(
                f,
                "curl of the homogeneous potential is nonzero (residual {residual:e})"
            ),
            Error::ContourThroughOrigin => write!(f, "integration contour passes through the origin"),
            Error::DiagonalEvaluation => {
                write!(f, "off-diagonal kernel requested on the diagonal")
            }
            Error::OutsideTangencyRange { z, z1, z2 } => {
                write!(f, "z = {z} outside the tangency range [{z1}, {z2}]")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
