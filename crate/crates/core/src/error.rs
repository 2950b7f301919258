use thiserror::Error;

/// Errors produced by the optical-lever noise library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor received a value outside its physical domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Radius of curvature requested exactly at the beam waist, where R = ∞.
    #[error("radius of curvature is singular at the beam waist (z = 0); use curvature() instead")]
    SingularCurvature,

    /// Mode index outside the supported range.
    #[error("mode index ({l},{m}) outside supported range l+m <= {max}")]
    UnsupportedMode { l: u32, m: u32, max: u32 },

    /// Hermite polynomial order above the supported maximum.
    #[error("Hermite order {0} exceeds supported maximum {1}")]
    UnsupportedHermiteOrder(u32, u32),

    /// Displacement or tilt too large for the first-order expansion.
    #[error("small-signal bound violated: {0}")]
    SmallSignalViolation(String),

    /// Two successive quadrature refinements disagreed beyond tolerance.
    #[error("overlap quadrature did not converge: refinement changed the result by {delta:e}")]
    QuadratureNotConverged { delta: f64 },

    /// Homodyne angle 0 or π reads a quadrature that carries no signal.
    #[error("degenerate readout: homodyne angle {0} rad carries no signal")]
    DegenerateReadout(f64),

    /// The Gouy phase required for cancellation cannot be reached by forward
    /// free propagation from the mirror.
    #[error("no physical detector position: required Gouy phase {required} rad not reachable from zeta(Z1) = {zeta_mirror} rad")]
    NoPhysicalSolution { required: f64, zeta_mirror: f64 },

    /// cot ψ ≤ 0, so κ₁ > 0 can never satisfy the cancellation condition.
    #[error("no cancellation frequency: Gouy separation psi = {psi} rad >= pi/2")]
    NoCancellation { psi: f64 },

    /// Monte Carlo sample count below the statistical minimum.
    #[error("sample count {0} too small (minimum {1})")]
    TooFewSamples(usize, usize),

    /// Frequency-grid parameters failed validation.
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
