//! Lens models and their deflection fields.
//!
//! Every model evaluates three things: the deflection (the Cauchy transform
//! of its mass distribution), the lens map
//!
//!     F(z) = z - conj(deflection(z)) - shear * conj(z),
//!
//! and the Jacobian of F viewed as a map of the plane. Sources sit at
//! w = F(z); the images of a source w are the solutions of F(z) = w. This
//! orientation is the one public convention; model-internal algebra that is
//! more natural in the conjugated form is conjugated locally.
//!
//! Deflections are closed forms throughout: sums of simple poles for point
//! masses, the exterior part of the Schwarz function for the uniform and
//! confocal ellipses, an arcsine branch for the isothermal ellipse, and
//! cumulative masses for radial profiles. The only quadrature happens at
//! construction time (profile mass constants).

mod geometry;
mod profiles;
mod schwarz;

pub use geometry::EllipseGeometry;
pub use profiles::{confocal_mass_constant, ConfocalProfile, RadialProfile};
pub use schwarz::{is_on_focal_cut, schwarz_decompose, sqrt_focal, SchwarzDecomposition};

use crate::error::{LensError, Result};
use num_complex::Complex64;

/// Orientation behaviour of the lens map at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    SensePreserving,
    SenseReversing,
}

/// |det| below this threshold is treated as a critical point of the lens map.
pub const CRITICAL_DET: f64 = 1e-12;

/// Jacobian determinant of the lens map together with the derived parity and
/// magnification. `magnification` is +inf at critical points.
#[derive(Debug, Clone, Copy)]
pub struct JacobianInfo {
    pub det: f64,
    pub parity: Parity,
    pub magnification: f64,
}

impl JacobianInfo {
    /// Builds the record from the Wirtinger derivatives alpha = dF/dz and
    /// beta = dF/dzbar: det = |alpha|^2 - |beta|^2.
    pub fn from_wirtinger(alpha: Complex64, beta: Complex64) -> Self {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        let parity = if det > 0.0 {
            Parity::SensePreserving
        } else {
            Parity::SenseReversing
        };
        let magnification = if det.abs() < CRITICAL_DET {
            f64::INFINITY
        } else {
            1.0 / det.abs()
        };
        JacobianInfo {
            det,
            parity,
            magnification,
        }
    }

    pub fn is_critical(&self) -> bool {
        self.det.abs() < CRITICAL_DET
    }
}

fn require_finite(value: f64, what: &str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(LensError::InvalidGeometry(format!("{what} must be finite, got {value}")))
    }
}

/// A finite collection of point masses with external shear.
#[derive(Debug, Clone)]
pub struct PointMassLens {
    masses: Vec<(f64, Complex64)>,
    shear: f64,
}

impl PointMassLens {
    /// `masses` holds (strength, position) pairs; strengths must be positive
    /// and positions pairwise distinct. An empty list is the zero-mass
    /// degenerate lens.
    pub fn new(masses: Vec<(f64, Complex64)>, shear: f64) -> Result<Self> {
        require_finite(shear, "shear")?;
        for (sigma, pos) in &masses {
            if !sigma.is_finite() || *sigma <= 0.0 {
                return Err(LensError::InvalidGeometry(format!(
                    "point mass strengths must be positive, got {sigma}"
                )));
            }
            if !pos.re.is_finite() || !pos.im.is_finite() {
                return Err(LensError::InvalidGeometry(format!(
                    "point mass position must be finite, got {pos}"
                )));
            }
        }
        for i in 0..masses.len() {
            for j in (i + 1)..masses.len() {
                if masses[i].1 == masses[j].1 {
                    return Err(LensError::InvalidGeometry(format!(
                        "point masses {i} and {j} coincide at {}",
                        masses[i].1
                    )));
                }
            }
        }
        Ok(PointMassLens { masses, shear })
    }

    pub fn masses(&self) -> &[(f64, Complex64)] {
        &self.masses
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }

    fn deflection(&self, z: Complex64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for (sigma, pos) in &self.masses {
            let d = z - pos;
            if d == Complex64::new(0.0, 0.0) {
                return Err(LensError::UnsupportedRegion {
                    model: "point_masses",
                    detail: format!("deflection evaluated at the mass position {pos}"),
                });
            }
            sum += sigma / d;
        }
        Ok(sum)
    }

    fn deflection_prime(&self, z: Complex64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for (sigma, pos) in &self.masses {
            let d = z - pos;
            if d == Complex64::new(0.0, 0.0) {
                return Err(LensError::UnsupportedRegion {
                    model: "point_masses",
                    detail: format!("derivative evaluated at the mass position {pos}"),
                });
            }
            sum -= sigma / (d * d);
        }
        Ok(sum)
    }
}

/// Constant density on an ellipse, with external shear.
#[derive(Debug, Clone)]
pub struct UniformEllipseLens {
    geometry: EllipseGeometry,
    density: f64,
    shear: f64,
}

impl UniformEllipseLens {
    pub fn new(geometry: EllipseGeometry, density: f64, shear: f64) -> Result<Self> {
        require_finite(shear, "shear")?;
        if !density.is_finite() || density <= 0.0 {
            return Err(LensError::InvalidGeometry(format!(
                "density must be positive, got {density}"
            )));
        }
        Ok(UniformEllipseLens {
            geometry,
            density,
            shear,
        })
    }

    pub fn geometry(&self) -> &EllipseGeometry {
        &self.geometry
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }

    fn deflection(&self, z: Complex64) -> Complex64 {
        let s = schwarz_decompose(&self.geometry);
        if self.geometry.is_interior(z) {
            // z.conj() - s1 coeff * z; continuous with the exterior value on
            // the boundary because there conj(z) = S1(z) + S2(z)
            self.density * (z.conj() - s.s1(z))
        } else {
            self.density * s.s2(z)
        }
    }

    fn wirtinger(&self, z: Complex64) -> (Complex64, Complex64) {
        let s = schwarz_decompose(&self.geometry);
        if self.geometry.is_interior(z) {
            let alpha = Complex64::new(1.0 - self.density, 0.0);
            let beta = Complex64::new(self.density * s.s1_coeff() - self.shear, 0.0);
            (alpha, beta)
        } else {
            let dp = self.density * s.s2_prime(z);
            (Complex64::new(1.0, 0.0), -dp.conj() - self.shear)
        }
    }
}

/// Density constant on each confocal shell inside an ellipse. Only the
/// exterior field is defined; the whole profile collapses to a single scalar
/// multiplying the uniform-ellipse exterior deflection.
#[derive(Debug, Clone)]
pub struct ConfocalProfileLens {
    geometry: EllipseGeometry,
    profile: ConfocalProfile,
    shear: f64,
    mass_constant: f64,
}

impl ConfocalProfileLens {
    pub fn new(geometry: EllipseGeometry, profile: ConfocalProfile, shear: f64) -> Result<Self> {
        require_finite(shear, "shear")?;
        let b2 = geometry.semi_minor() * geometry.semi_minor();
        for k in 0..17 {
            let offset = b2 * (k as f64 + 0.5) / 17.0;
            let mu = profile.density(offset, geometry.semi_minor());
            // profiles may blow up towards the core shell (offset -> 0), but
            // nowhere else, and never go negative
            let may_diverge = offset <= b2 * 0.1;
            if mu < 0.0 || (!mu.is_finite() && !may_diverge) {
                return Err(LensError::InvalidGeometry(format!(
                    "profile density must be nonnegative, got {mu} at shell offset {offset}"
                )));
            }
        }
        let mass_constant = confocal_mass_constant(&profile, &geometry)?;
        Ok(ConfocalProfileLens {
            geometry,
            profile,
            shear,
            mass_constant,
        })
    }

    pub fn geometry(&self) -> &EllipseGeometry {
        &self.geometry
    }

    pub fn profile(&self) -> &ConfocalProfile {
        &self.profile
    }

    /// The cached scalar multiplying the uniform-ellipse exterior deflection.
    pub fn mass_constant(&self) -> f64 {
        self.mass_constant
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }

    fn deflection(&self, z: Complex64) -> Result<Complex64> {
        if self.geometry.is_interior(z) {
            return Err(LensError::UnsupportedRegion {
                model: "confocal_ellipse",
                detail: format!("interior deflection is not defined for shell profiles (z = {z})"),
            });
        }
        let s = schwarz_decompose(&self.geometry);
        Ok(self.mass_constant * s.s2(z))
    }

    fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        if self.geometry.is_interior(z) {
            return Err(LensError::UnsupportedRegion {
                model: "confocal_ellipse",
                detail: format!("interior Jacobian is not defined for shell profiles (z = {z})"),
            });
        }
        let s = schwarz_decompose(&self.geometry);
        let dp = self.mass_constant * s.s2_prime(z);
        Ok((Complex64::new(1.0, 0.0), -dp.conj() - self.shear))
    }
}

/// Isothermal density on an ellipse (constant on confocal shells, decaying as
/// the shell measure's square root), with external shear.
#[derive(Debug, Clone)]
pub struct IsothermalEllipseLens {
    geometry: EllipseGeometry,
    strength: f64,
    shear: f64,
}

impl IsothermalEllipseLens {
    pub fn new(geometry: EllipseGeometry, strength: f64, shear: f64) -> Result<Self> {
        require_finite(shear, "shear")?;
        if !strength.is_finite() || strength <= 0.0 {
            return Err(LensError::InvalidGeometry(format!(
                "strength must be positive, got {strength}"
            )));
        }
        Ok(IsothermalEllipseLens {
            geometry,
            strength,
            shear,
        })
    }

    pub fn geometry(&self) -> &EllipseGeometry {
        &self.geometry
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }

    /// (strength / c) * asin(c / z), principal branch. Analytic off the focal
    /// segment, which carries the whole branch structure: the asin argument
    /// lands on the arcsine cut exactly when z lies on [-c, c]. Interior
    /// points off the segment are legitimate analytic continuations, so the
    /// same expression serves both regions.
    fn deflection(&self, z: Complex64) -> Result<Complex64> {
        let c = self.geometry.focal_distance();
        if z == Complex64::new(0.0, 0.0) {
            return Err(LensError::UnsupportedRegion {
                model: "isothermal_ellipse",
                detail: "deflection at the origin is undefined".into(),
            });
        }
        Ok(self.strength / c * (c / z).asin())
    }

    fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let c = self.geometry.focal_distance();
        if z == Complex64::new(0.0, 0.0) {
            return Err(LensError::UnsupportedRegion {
                model: "isothermal_ellipse",
                detail: "Jacobian at the origin is undefined".into(),
            });
        }
        let dp = -self.strength / (z * sqrt_focal(z, c));
        Ok((Complex64::new(1.0, 0.0), -dp.conj() - self.shear))
    }
}

/// Radially symmetric density on a disk, with external shear.
#[derive(Debug, Clone)]
pub struct RadialLens {
    radius: f64,
    profile: RadialProfile,
    shear: f64,
    total_mass: f64,
}

impl RadialLens {
    pub fn new(radius: f64, profile: RadialProfile, shear: f64) -> Result<Self> {
        require_finite(shear, "shear")?;
        if !radius.is_finite() || radius <= 0.0 {
            return Err(LensError::InvalidGeometry(format!(
                "radius must be positive, got {radius}"
            )));
        }
        for k in 1..=16 {
            let r = radius * k as f64 / 16.0;
            let phi = profile.density(r);
            if phi < 0.0 || !phi.is_finite() {
                return Err(LensError::InvalidGeometry(format!(
                    "density must be nonnegative, got {phi} at r = {r}"
                )));
            }
        }
        let total_mass = profile.cumulative_mass(radius)?;
        if !total_mass.is_finite() {
            return Err(LensError::NonIntegrable(format!(
                "total mass diverged for radius {radius}"
            )));
        }
        Ok(RadialLens {
            radius,
            profile,
            shear,
            total_mass,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    /// 2 pi * integral of phi(r) r dr over the whole disk; the exterior
    /// deflection is total_mass / z.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }

    /// Cumulative mass inside radius rho, clamped at the disk edge.
    pub fn mass_within(&self, rho: f64) -> Result<f64> {
        if rho >= self.radius {
            Ok(self.total_mass)
        } else {
            self.profile.cumulative_mass(rho)
        }
    }

    fn deflection(&self, z: Complex64) -> Result<Complex64> {
        let rho = z.norm();
        if rho == 0.0 {
            return match self.profile {
                // bounded density: the deflection vanishes at the centre
                RadialProfile::Uniform { .. } => Ok(Complex64::new(0.0, 0.0)),
                _ => Err(LensError::UnsupportedRegion {
                    model: "radial",
                    detail: "deflection at the origin is undefined for singular profiles".into(),
                }),
            };
        }
        Ok(self.mass_within(rho)? / z)
    }

    fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let rho = z.norm();
        if rho == 0.0 {
            return Err(LensError::UnsupportedRegion {
                model: "radial",
                detail: "Jacobian at the origin is undefined".into(),
            });
        }
        if rho >= self.radius {
            let dp = -self.total_mass / (z * z);
            return Ok((Complex64::new(1.0, 0.0), -dp.conj() - self.shear));
        }
        let m = self.profile.cumulative_mass(rho)?;
        let phi = self.profile.density(rho);
        let zb = z.conj();
        let alpha = Complex64::new(1.0 - std::f64::consts::PI * phi, 0.0);
        let beta = -std::f64::consts::PI * phi * z / zb + m / (zb * zb) - self.shear;
        Ok((alpha, beta))
    }
}

/// A single point mass with external shear, the minimal lens that already
/// produces a quartic image equation.
#[derive(Debug, Clone)]
pub struct ChangRefsdalLens {
    mass: f64,
    shear: f64,
}

impl ChangRefsdalLens {
    pub fn new(mass: f64, shear: f64) -> Result<Self> {
        require_finite(shear, "shear")?;
        if !mass.is_finite() || mass <= 0.0 {
            return Err(LensError::InvalidGeometry(format!(
                "mass must be positive, got {mass}"
            )));
        }
        Ok(ChangRefsdalLens { mass, shear })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }
}

/// Any lens the suite can evaluate.
#[derive(Debug, Clone)]
pub enum LensModel {
    PointMasses(PointMassLens),
    UniformEllipse(UniformEllipseLens),
    ConfocalProfile(ConfocalProfileLens),
    IsothermalEllipse(IsothermalEllipseLens),
    Radial(RadialLens),
    ChangRefsdal(ChangRefsdalLens),
}

impl LensModel {
    pub fn shear(&self) -> f64 {
        match self {
            LensModel::PointMasses(l) => l.shear(),
            LensModel::UniformEllipse(l) => l.shear(),
            LensModel::ConfocalProfile(l) => l.shear(),
            LensModel::IsothermalEllipse(l) => l.shear(),
            LensModel::Radial(l) => l.shear(),
            LensModel::ChangRefsdal(l) => l.shear(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LensModel::PointMasses(_) => "point_masses",
            LensModel::UniformEllipse(_) => "uniform_ellipse",
            LensModel::ConfocalProfile(_) => "confocal_ellipse",
            LensModel::IsothermalEllipse(_) => "isothermal_ellipse",
            LensModel::Radial(_) => "radial",
            LensModel::ChangRefsdal(_) => "chang_refsdal",
        }
    }

    /// The Cauchy transform of the lens's mass distribution at z.
    pub fn deflection(&self, z: Complex64) -> Result<Complex64> {
        match self {
            LensModel::PointMasses(l) => l.deflection(z),
            LensModel::UniformEllipse(l) => Ok(l.deflection(z)),
            LensModel::ConfocalProfile(l) => l.deflection(z),
            LensModel::IsothermalEllipse(l) => l.deflection(z),
            LensModel::Radial(l) => l.deflection(z),
            LensModel::ChangRefsdal(l) => {
                if z == Complex64::new(0.0, 0.0) {
                    return Err(LensError::UnsupportedRegion {
                        model: "chang_refsdal",
                        detail: "deflection evaluated at the mass position 0".into(),
                    });
                }
                Ok(l.mass() / z)
            }
        }
    }

    /// w = z - conj(deflection(z)) - shear * conj(z).
    pub fn lens_map(&self, z: Complex64) -> Result<Complex64> {
        let d = self.deflection(z)?;
        Ok(z - d.conj() - self.shear() * z.conj())
    }

    /// Wirtinger derivatives (alpha, beta) = (dF/dz, dF/dzbar) of the lens
    /// map, from per-model closed forms.
    pub fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            LensModel::PointMasses(l) => {
                let dp = l.deflection_prime(z)?;
                Ok((one, -dp.conj() - l.shear()))
            }
            LensModel::UniformEllipse(l) => Ok(l.wirtinger(z)),
            LensModel::ConfocalProfile(l) => l.wirtinger(z),
            LensModel::IsothermalEllipse(l) => l.wirtinger(z),
            LensModel::Radial(l) => l.wirtinger(z),
            LensModel::ChangRefsdal(l) => {
                if z == Complex64::new(0.0, 0.0) {
                    return Err(LensError::UnsupportedRegion {
                        model: "chang_refsdal",
                        detail: "Jacobian evaluated at the mass position 0".into(),
                    });
                }
                let dp = -l.mass() / (z * z);
                Ok((one, -dp.conj() - l.shear()))
            }
        }
    }

    /// Jacobian data of the lens map at z, from the analytic derivatives.
    pub fn jacobian(&self, z: Complex64) -> Result<JacobianInfo> {
        let (alpha, beta) = self.wirtinger(z)?;
        Ok(JacobianInfo::from_wirtinger(alpha, beta))
    }

    /// Jacobian data from central differences of the lens map, step
    /// 1e-6 * max(1, |z|). Exists to cross-check the closed forms.
    pub fn jacobian_finite_difference(&self, z: Complex64) -> Result<JacobianInfo> {
        let h = 1e-6 * z.norm().max(1.0);
        let fxp = self.lens_map(z + Complex64::new(h, 0.0))?;
        let fxm = self.lens_map(z - Complex64::new(h, 0.0))?;
        let fyp = self.lens_map(z + Complex64::new(0.0, h))?;
        let fym = self.lens_map(z - Complex64::new(0.0, h))?;
        let fx = (fxp - fxm) / (2.0 * h);
        let fy = (fyp - fym) / (2.0 * h);
        let i = Complex64::new(0.0, 1.0);
        let alpha = (fx - i * fy) / 2.0;
        let beta = (fx + i * fy) / 2.0;
        Ok(JacobianInfo::from_wirtinger(alpha, beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_point_mass_values() {
        let lens = LensModel::PointMasses(
            PointMassLens::new(vec![(1.0, c(0.0, 0.0))], 0.0).unwrap(),
        );
        assert!((lens.deflection(c(2.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        // unit circle maps to the source at the origin
        assert!(lens.lens_map(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let j = lens.jacobian(c(2.0, 0.0)).unwrap();
        assert!((j.det - 0.9375).abs() < 1e-15);
        assert_eq!(j.parity, Parity::SensePreserving);
        assert!((j.magnification - 1.0 / 0.9375).abs() < 1e-12);
        // the unit circle is the critical curve
        let j = lens.jacobian(c(0.0, 1.0)).unwrap();
        assert!(j.is_critical());
        assert!(j.magnification.is_infinite());
    }

    #[test]
    fn zero_mass_lens_is_identity() {
        let lens = LensModel::PointMasses(PointMassLens::new(vec![], 0.0).unwrap());
        let z = c(0.3, -1.2);
        assert_eq!(lens.lens_map(z).unwrap(), z);
        let j = lens.jacobian(z).unwrap();
        assert!((j.det - 1.0).abs() < 1e-15);
        assert!((j.magnification - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_ellipse_exterior_value() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let lens = LensModel::UniformEllipse(UniformEllipseLens::new(g, 1.0, 0.0).unwrap());
        let expect = (4.0 / 3.0) * (3.0 - 6f64.sqrt());
        let d = lens.deflection(c(3.0, 0.0)).unwrap();
        assert!((d - c(expect, 0.0)).norm() < 1e-14, "{d}");
        let w = lens.lens_map(c(3.0, 0.0)).unwrap();
        assert!((w - c(3.0 - expect, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn uniform_ellipse_boundary_consistency() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let lens = UniformEllipseLens::new(g, 1.7, 0.0).unwrap();
        let s = schwarz_decompose(lens.geometry());
        for k in 0..1000 {
            let t = std::f64::consts::TAU * (k as f64 + 0.5) / 1000.0;
            let z = lens.geometry().boundary_point(t);
            let interior = lens.density() * (z.conj() - s.s1(z));
            let exterior = lens.density() * s.s2(z);
            assert!(
                (interior - exterior).norm() < 1e-9,
                "t = {t}: interior {interior} vs exterior {exterior}"
            );
        }
    }

    #[test]
    fn chang_refsdal_matches_sheared_point_mass() {
        let cr = LensModel::ChangRefsdal(ChangRefsdalLens::new(0.8, 0.3).unwrap());
        let pm = LensModel::PointMasses(
            PointMassLens::new(vec![(0.8, c(0.0, 0.0))], 0.3).unwrap(),
        );
        for z in [c(1.1, 0.4), c(-0.2, 0.9), c(2.0, -3.0)] {
            let a = cr.lens_map(z).unwrap();
            let b = pm.lens_map(z).unwrap();
            assert!((a - b).norm() < 1e-15);
            let ja = cr.jacobian(z).unwrap();
            let jb = pm.jacobian(z).unwrap();
            assert!((ja.det - jb.det).abs() < 1e-15);
        }
    }

    #[test]
    fn radial_exterior_is_monopole() {
        let lens = RadialLens::new(1.0, RadialProfile::Uniform { density: 0.9 }, 0.0).unwrap();
        let total = lens.total_mass();
        assert!((total - std::f64::consts::PI * 0.9).abs() < 1e-14);
        let lens = LensModel::Radial(lens);
        let d = lens.deflection(c(2.0, 0.0)).unwrap();
        assert!((d - c(total / 2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn radial_interior_uniform_matches_disk_transform() {
        let sigma = 0.4;
        let lens = LensModel::Radial(
            RadialLens::new(2.0, RadialProfile::Uniform { density: sigma }, 0.0).unwrap(),
        );
        // inside a uniform disk the plain-measure transform is pi sigma conj(z)
        for z in [c(0.5, 0.3), c(-1.0, 0.2), c(0.0, 1.5)] {
            let d = lens.deflection(z).unwrap();
            let expect = std::f64::consts::PI * sigma * z.conj();
            assert!((d - expect).norm() < 1e-13, "{z}: {d} vs {expect}");
        }
    }

    #[test]
    fn unsupported_regions_are_reported() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let confocal = LensModel::ConfocalProfile(
            ConfocalProfileLens::new(g, ConfocalProfile::Uniform, 0.0).unwrap(),
        );
        assert!(matches!(
            confocal.deflection(c(0.1, 0.1)),
            Err(LensError::UnsupportedRegion { .. })
        ));

        let pm = LensModel::PointMasses(
            PointMassLens::new(vec![(1.0, c(0.5, 0.5))], 0.0).unwrap(),
        );
        assert!(matches!(
            pm.deflection(c(0.5, 0.5)),
            Err(LensError::UnsupportedRegion { .. })
        ));

        let iso = LensModel::Radial(
            RadialLens::new(1.0, RadialProfile::Isothermal { strength: 0.2 }, 0.0).unwrap(),
        );
        assert!(matches!(
            iso.deflection(c(0.0, 0.0)),
            Err(LensError::UnsupportedRegion { .. })
        ));
    }

    #[test]
    fn constructors_reject_bad_data() {
        assert!(PointMassLens::new(vec![(0.0, c(0.0, 0.0))], 0.0).is_err());
        assert!(PointMassLens::new(
            vec![(1.0, c(0.5, 0.0)), (1.0, c(0.5, 0.0))],
            0.0
        )
        .is_err());
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        assert!(UniformEllipseLens::new(g.clone(), -1.0, 0.0).is_err());
        assert!(ChangRefsdalLens::new(1.0, f64::NAN).is_err());
        assert!(RadialLens::new(-1.0, RadialProfile::Uniform { density: 1.0 }, 0.0).is_err());
    }

    #[test]
    fn confocal_uniform_profile_reduces_to_uniform_ellipse() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let confocal = LensModel::ConfocalProfile(
            ConfocalProfileLens::new(g.clone(), ConfocalProfile::Uniform, 0.0).unwrap(),
        );
        let uniform =
            LensModel::UniformEllipse(UniformEllipseLens::new(g, 1.0, 0.0).unwrap());
        for z in [c(3.0, 0.0), c(2.5, 1.5), c(-4.0, 0.3)] {
            let a = confocal.deflection(z).unwrap();
            let b = uniform.deflection(z).unwrap();
            assert!((a - b).norm() < 1e-12, "{z}: {a} vs {b}");
        }
    }
}
