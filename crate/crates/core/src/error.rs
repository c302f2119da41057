use thiserror::Error;

/// Errors raised by the spectral, wavefunction and thermodynamic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The quantity under the square root of δ is negative.
    #[error("no real delta: radicand {radicand} is negative")]
    NoRealDelta { radicand: f64 },

    /// c8 or c9 is negative, so the NU constants leave the real branch.
    #[error("complex NU branch: c8 = {c8}, c9 = {c9}")]
    ComplexBranch { c8: f64, c9: f64 },

    #[error("no root in bracket [{lo}, {hi}]: residual does not change sign")]
    NoRootInBracket { lo: f64, hi: f64 },

    #[error("root refinement did not converge after {iterations} iterations")]
    RootNotConverged { iterations: usize },

    #[error("no interior stationary point: Q3 = 0, energy is monotone in n")]
    NoStationaryPoint,

    #[error("quadrature did not converge on [{a}, {b}]: estimate {estimate}, error {error}")]
    Quadrature {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
    },

    #[error("range error: {0}")]
    Range(String),

    #[error("grid resolution error: {0}")]
    Resolution(String),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to inputs outside
    /// the mathematical domain of a formula.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RootNotConverged { .. }
                | Error::Quadrature { .. }
                | Error::Range(_)
                | Error::Resolution(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
