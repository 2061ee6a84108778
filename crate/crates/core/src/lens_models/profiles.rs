//! Density profiles for the extended lens models.
//!
//! Two families appear: profiles constant on confocal ellipses (parametrized
//! by the confocal coordinate lambda) and radially symmetric profiles on a
//! disk. Both are reduced to scalar constants or cumulative integrals here so
//! the model code can stay closed-form.

use super::geometry::EllipseGeometry;
use crate::error::{LensError, Result};
use crate::quad;
use std::fmt;
use std::sync::Arc;

/// Density as a function of the confocal shell parameter lambda in [-b^2, 0],
/// where lambda = 0 is the outer boundary ellipse and lambda = -b^2 the
/// degenerate core shell (the focal segment).
///
/// Profiles are evaluated against the shell offset s = b^2 + lambda in
/// (0, b^2] rather than lambda itself: near the core, s underflows to zero
/// when reconstructed as b^2 + lambda in floating point, and core-singular
/// profiles would read as infinite long before the true singularity.
#[derive(Clone)]
pub enum ConfocalProfile {
    /// Constant density 1 on every shell.
    Uniform,
    /// (s/b^2)^p = (1 + lambda/b^2)^p. Integrable against the shell measure
    /// only for p > -1/2.
    Power { p: f64 },
    /// Arbitrary profile as a function of the shell offset s = b^2 + lambda.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for ConfocalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfocalProfile::Uniform => write!(f, "Uniform"),
            ConfocalProfile::Power { p } => write!(f, "Power {{ p: {p} }}"),
            ConfocalProfile::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl ConfocalProfile {
    /// mu at shell offset s = b^2 + lambda.
    pub fn density(&self, offset: f64, b: f64) -> f64 {
        match self {
            ConfocalProfile::Uniform => 1.0,
            ConfocalProfile::Power { p } => (offset / (b * b)).powf(*p),
            ConfocalProfile::Custom(f) => f(offset),
        }
    }
}

/// The single constant that a confocal-shell density contributes to the
/// exterior deflection: the weighted average of the per-shell deflection
/// strengths,
///
///   c_eff = integral over lambda in [-b^2, 0] of
///           mu(lambda) (a^2 + b^2 + 2 lambda)
///           / (2ab sqrt((a^2 + lambda)(b^2 + lambda))) d lambda.
///
/// The uniform profile gives exactly 1. The endpoint lambda = -b^2 is an
/// integrable inverse-square-root singularity; substituting t = sqrt(b^2 +
/// lambda) removes it, which is what makes plain Gauss panels adequate.
pub fn confocal_mass_constant(profile: &ConfocalProfile, geometry: &EllipseGeometry) -> Result<f64> {
    if let ConfocalProfile::Power { p } = profile {
        if *p <= -0.5 {
            return Err(LensError::NonIntegrable(format!(
                "power profile p = {p} is not integrable against the shell measure (needs p > -1/2)"
            )));
        }
    }
    let (a, b) = (geometry.semi_major(), geometry.semi_minor());
    let d2 = a * a - b * b;
    // t = sqrt(b^2 + lambda), d lambda = 2 t dt; in terms of t the shell
    // weight a^2 + b^2 + 2 lambda becomes d^2 + 2t^2 with no cancellation
    let integrand = |t: f64| {
        let shell = (d2 + 2.0 * t * t) / (a * b * (d2 + t * t).sqrt());
        profile.density(t * t, b) * shell
    };
    let value = quad::integrate(&integrand, 0.0, b, 1e-12, 1e-12)?;
    if !value.is_finite() {
        return Err(LensError::NonIntegrable(format!(
            "confocal mass constant diverged for a = {a}, b = {b}, profile {profile:?}"
        )));
    }
    Ok(value)
}

/// Radially symmetric density phi(r) supported on r <= radius.
#[derive(Clone)]
pub enum RadialProfile {
    /// Constant density.
    Uniform { density: f64 },
    /// phi(r) = strength / r. The cumulative mass is linear in rho, so the
    /// deflection inside the disk is constant in modulus.
    Isothermal { strength: f64 },
    /// Arbitrary phi(r); must be integrable against r dr at the origin.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialProfile::Uniform { density } => {
                write!(f, "Uniform {{ density: {density} }}")
            }
            RadialProfile::Isothermal { strength } => {
                write!(f, "Isothermal {{ strength: {strength} }}")
            }
            RadialProfile::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl RadialProfile {
    /// phi(r).
    pub fn density(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Uniform { density } => *density,
            RadialProfile::Isothermal { strength } => strength / r,
            RadialProfile::Custom(f) => f(r),
        }
    }

    /// Cumulative mass m(rho) = 2 pi * integral of phi(r) r dr from 0 to rho,
    /// the quantity that drives the deflection at radius rho.
    pub fn cumulative_mass(&self, rho: f64) -> Result<f64> {
        if rho <= 0.0 {
            return Ok(0.0);
        }
        match self {
            RadialProfile::Uniform { density } => {
                Ok(std::f64::consts::PI * density * rho * rho)
            }
            RadialProfile::Isothermal { strength } => {
                Ok(std::f64::consts::TAU * strength * rho)
            }
            RadialProfile::Custom(f) => {
                let m = quad::integrate(&|r: f64| f(r) * r, 0.0, rho, 1e-12, 1e-12)?;
                if !m.is_finite() {
                    return Err(LensError::NonIntegrable(format!(
                        "cumulative mass diverged at rho = {rho}"
                    )));
                }
                Ok(std::f64::consts::TAU * m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_confocal_constant_is_one() {
        for (a, b) in [(2.0, 1.0), (3.0, 0.5), (1.7, 1.3)] {
            let g = EllipseGeometry::new(a, b).unwrap();
            let c = confocal_mass_constant(&ConfocalProfile::Uniform, &g).unwrap();
            assert!((c - 1.0).abs() < 1e-12, "a = {a}, b = {b}: {c}");
        }
    }

    #[test]
    fn power_profile_below_threshold_rejected() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let err = confocal_mass_constant(&ConfocalProfile::Power { p: -0.5 }, &g);
        assert!(matches!(err, Err(LensError::NonIntegrable(_))));
        let err = confocal_mass_constant(&ConfocalProfile::Power { p: -0.75 }, &g);
        assert!(matches!(err, Err(LensError::NonIntegrable(_))));
        assert!(confocal_mass_constant(&ConfocalProfile::Power { p: -0.4 }, &g).is_ok());
    }

    #[test]
    fn custom_profile_matches_power() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let b = g.semi_minor();
        let p = 1.5;
        let direct = confocal_mass_constant(&ConfocalProfile::Power { p }, &g).unwrap();
        let custom = ConfocalProfile::Custom(Arc::new(move |s: f64| (s / (b * b)).powf(p)));
        let via_custom = confocal_mass_constant(&custom, &g).unwrap();
        assert!((direct - via_custom).abs() < 1e-12);
    }

    #[test]
    fn radial_cumulative_masses() {
        let uni = RadialProfile::Uniform { density: 0.7 };
        let m = uni.cumulative_mass(2.0).unwrap();
        assert!((m - std::f64::consts::PI * 0.7 * 4.0).abs() < 1e-12);

        let iso = RadialProfile::Isothermal { strength: 0.3 };
        let m = iso.cumulative_mass(1.5).unwrap();
        assert!((m - std::f64::consts::TAU * 0.3 * 1.5).abs() < 1e-12);

        // custom copy of the isothermal profile integrates to the same mass
        let custom = RadialProfile::Custom(Arc::new(|r: f64| 0.3 / r));
        let mc = custom.cumulative_mass(1.5).unwrap();
        assert!((m - mc).abs() < 1e-9, "{m} vs {mc}");
    }
}
