//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong while building models, reducing equations or
/// certifying image sets.
#[derive(Debug, Clone, Error)]
pub enum LensError {
    /// Geometry parameters out of range (non-positive axes, a <= b, ...).
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A model was evaluated outside the region where its formula holds.
    #[error("unsupported region for {model}: {detail}")]
    UnsupportedRegion { model: &'static str, detail: String },

    /// A profile integral does not converge (density grows too fast at the
    /// focal chord or the origin).
    #[error("profile integral does not converge: {0}")]
    NonIntegrable(String),

    /// The algebraic reduction collapsed to the zero polynomial: the source
    /// sits in an exactly degenerate configuration and the image set is a
    /// continuum. Ring construction is the right tool for these inputs.
    #[error("degenerate configuration: {0}; solve for the ring instead of isolated images")]
    Degenerate(String),

    /// Simultaneous root refinement did not settle within the iteration cap.
    #[error("root refinement failed to converge after {iterations} iterations")]
    RootsUnconverged { iterations: usize },

    /// A certification contour passes too close to a zero or a pole to give a
    /// trustworthy winding number.
    #[error("contour of radius {radius} touches a feature (min |F| = {min_abs}); retry with radius near {suggested}")]
    ContourTouchesFeature {
        radius: f64,
        min_abs: f64,
        suggested: f64,
    },

    /// No admissible ring exists for the requested configuration.
    #[error("no ring: {0}")]
    NoRing(String),

    /// A conformal map failed its injectivity certification.
    #[error("conformal map is not injective on the unit disk: {0}")]
    NotInjective(String),

    /// The linear system behind a closed-form image is singular.
    #[error("degenerate interior coefficients: {0}")]
    DegenerateInterior(String),

    /// Catch-all for numerical failures with context attached.
    #[error("numerical failure in {context}: {detail}")]
    Numerical { context: &'static str, detail: String },
}

impl LensError {
    pub(crate) fn numerical(context: &'static str, detail: impl Into<String>) -> Self {
        LensError::Numerical {
            context,
            detail: detail.into(),
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, LensError>;

/// Shared helper: lexicographic order on (re, im), the canonical image order.
pub fn lex_cmp(p: Complex64, q: Complex64) -> std::cmp::Ordering {
    p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im))
}
