//! Ellipse geometry shared by the elliptical lens models.

use crate::error::{LensError, Result};
use num_complex::Complex64;

/// An axis-aligned ellipse x^2/a^2 + y^2/b^2 = 1 centered at the origin,
/// with its focal distance cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    a: f64,
    b: f64,
    c: f64,
}

impl EllipseGeometry {
    /// Builds the geometry for semi-axes a > b > 0.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= 0.0 || a <= b {
            return Err(LensError::InvalidGeometry(format!(
                "need semi-axes a > b > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(EllipseGeometry {
            a,
            b,
            c: (a * a - b * b).sqrt(),
        })
    }

    pub fn semi_major(&self) -> f64 {
        self.a
    }

    pub fn semi_minor(&self) -> f64 {
        self.b
    }

    /// Focal distance c = sqrt(a^2 - b^2); the foci sit at +-c on the real axis.
    pub fn focal_distance(&self) -> f64 {
        self.c
    }

    /// Signed boundary function q(x, y) = x^2/a^2 + y^2/b^2 - 1: negative
    /// inside, zero on the boundary, positive outside.
    pub fn boundary_fn(&self, z: Complex64) -> f64 {
        let x = z.re / self.a;
        let y = z.im / self.b;
        x * x + y * y - 1.0
    }

    /// Boundary point at eccentric angle t: (a cos t, b sin t).
    pub fn boundary_point(&self, t: f64) -> Complex64 {
        Complex64::new(self.a * t.cos(), self.b * t.sin())
    }

    /// Area pi*a*b.
    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.a * self.b
    }

    /// Whether z lies strictly inside the ellipse, beyond the boundary band.
    pub fn is_interior(&self, z: Complex64) -> bool {
        self.boundary_fn(z) < -Self::BOUNDARY_BAND
    }

    /// Whether z lies in the thin band |q| <= band around the boundary.
    pub fn is_on_boundary(&self, z: Complex64) -> bool {
        self.boundary_fn(z).abs() <= Self::BOUNDARY_BAND
    }

    /// Half-width of the boundary band in units of q(x, y).
    pub const BOUNDARY_BAND: f64 = 1e-10;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_axes() {
        assert!(EllipseGeometry::new(1.0, 1.0).is_err());
        assert!(EllipseGeometry::new(1.0, 2.0).is_err());
        assert!(EllipseGeometry::new(2.0, 0.0).is_err());
        assert!(EllipseGeometry::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn focal_distance_is_consistent() {
        let e = EllipseGeometry::new(2.0, 1.0).unwrap();
        let c = e.focal_distance();
        assert!((c * c - (4.0 - 1.0)).abs() < 1e-15 * 4.0);
    }

    #[test]
    fn boundary_fn_signs() {
        let e = EllipseGeometry::new(2.0, 1.0).unwrap();
        assert!(e.boundary_fn(Complex64::new(0.0, 0.0)) < 0.0);
        assert!(e.boundary_fn(Complex64::new(3.0, 0.0)) > 0.0);
        assert!(e.boundary_fn(Complex64::new(2.0, 0.0)).abs() < 1e-15);
        assert!(e.is_on_boundary(e.boundary_point(0.7)));
    }
}
