//! The focal branch of sqrt(z^2 - c^2) and the Schwarz function of an ellipse.
//!
//! Everything downstream of the elliptical models leans on one branch choice:
//! the square root whose only cut is the focal chord [-c, c] and which behaves
//! like z at infinity. It is built as the product of the two principal
//! half-plane roots sqrt(z - c) * sqrt(z + c); their cuts overlap on
//! (-inf, -c] and cancel there, leaving exactly the chord.

use super::geometry::EllipseGeometry;
use num_complex::Complex64;

/// sqrt(z^2 - c^2) with branch cut exactly on [-c, c], asymptotic to z.
///
/// On the open cut the limit from the upper half-plane is returned,
/// i.e. i*sqrt(c^2 - x^2) for real x in (-c, c); use [`is_on_focal_cut`] to
/// detect that case when it must be treated specially.
pub fn sqrt_focal(z: Complex64, c: f64) -> Complex64 {
    let mut z = z;
    if z.im == 0.0 {
        // force the upper-half-plane limit for points on the real axis;
        // a negative zero imaginary part would otherwise pick the lower branch
        z.im = 0.0;
    }
    (z - c).sqrt() * (z + c).sqrt()
}

/// True when z lies on the open focal chord (-c, c), where [`sqrt_focal`]
/// returns a one-sided limit.
pub fn is_on_focal_cut(z: Complex64, c: f64) -> bool {
    z.im == 0.0 && z.re.abs() < c
}

/// Schwarz function S of an ellipse boundary, split as S = S1 + S2 with
/// S1 linear (analytic inside) and S2 analytic outside the ellipse and
/// vanishing at infinity. On the boundary S1 + S2 equals conj(zeta).
#[derive(Debug, Clone, Copy)]
pub struct SchwarzDecomposition {
    s1_coeff: f64,
    s2_coeff: f64,
    c: f64,
}

/// Splits the Schwarz function of `geometry`'s boundary into its interior and
/// exterior parts.
pub fn schwarz_decompose(geometry: &EllipseGeometry) -> SchwarzDecomposition {
    let (a, b, c) = (
        geometry.semi_major(),
        geometry.semi_minor(),
        geometry.focal_distance(),
    );
    let c2 = c * c;
    SchwarzDecomposition {
        // (a - b)^2 / c^2 reduces to (a - b)/(a + b)
        s1_coeff: (a - b) / (a + b),
        s2_coeff: 2.0 * a * b / c2,
        c,
    }
}

impl SchwarzDecomposition {
    /// Coefficient of the linear part: S1(zeta) = s1_coeff * zeta.
    pub fn s1_coeff(&self) -> f64 {
        self.s1_coeff
    }

    /// S1(zeta), the part analytic inside the ellipse.
    pub fn s1(&self, zeta: Complex64) -> Complex64 {
        self.s1_coeff * zeta
    }

    /// S2(zeta) = (2ab/c^2)(zeta - sqrt(zeta^2 - c^2)), analytic outside the
    /// ellipse, O(ab/zeta) at infinity.
    pub fn s2(&self, zeta: Complex64) -> Complex64 {
        self.s2_coeff * (zeta - sqrt_focal(zeta, self.c))
    }

    /// Derivative of S2.
    pub fn s2_prime(&self, zeta: Complex64) -> Complex64 {
        self.s2_coeff * (1.0 - zeta / sqrt_focal(zeta, self.c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_focal_on_real_axis_outside_cut() {
        let v = sqrt_focal(Complex64::new(2.0, 0.0), 1.0);
        assert!((v - Complex64::new(3f64.sqrt(), 0.0)).norm() < 1e-15);
        // continuous across the negative real axis beyond the cut
        let up = sqrt_focal(Complex64::new(-2.0, 1e-12), 1.0);
        let down = sqrt_focal(Complex64::new(-2.0, -1e-12), 1.0);
        assert!((up - down).norm() < 1e-9);
        assert!(up.re < 0.0, "asymptotic to z on the negative axis");
    }

    #[test]
    fn sqrt_focal_on_imaginary_axis() {
        for y in [0.3, 1.0, 4.2] {
            let v = sqrt_focal(Complex64::new(0.0, y), 1.0);
            let expect = Complex64::new(0.0, (y * y + 1.0).sqrt());
            assert!((v - expect).norm() < 1e-14, "y = {y}: {v}");
        }
    }

    #[test]
    fn on_cut_limit_comes_from_above() {
        let c = 1.0;
        let v = sqrt_focal(Complex64::new(0.5, 0.0), c);
        let expect = Complex64::new(0.0, (c * c - 0.25f64).sqrt());
        assert!((v - expect).norm() < 1e-14);
        assert!(is_on_focal_cut(Complex64::new(0.5, 0.0), c));
        assert!(!is_on_focal_cut(Complex64::new(1.5, 0.0), c));
        // a negative-zero imaginary part must not flip the branch
        let vz = sqrt_focal(Complex64::new(0.5, -0.0), c);
        assert!((vz - expect).norm() < 1e-14);
    }

    #[test]
    fn schwarz_identity_on_boundary() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let s = schwarz_decompose(&g);
        for k in 0..1000 {
            let t = std::f64::consts::TAU * (k as f64 + 0.5) / 1000.0;
            let zeta = g.boundary_point(t);
            let err = (s.s1(zeta) + s.s2(zeta) - zeta.conj()).norm();
            assert!(err < 1e-10, "t = {t}: err = {err}");
        }
    }

    #[test]
    fn s2_decays_like_inverse_zeta() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let s = schwarz_decompose(&g);
        // leading Laurent coefficient of S2 is a*b; checked at moderate size
        // because zeta - sqrt(zeta^2 - c^2) cancels ~|zeta|^2/c^2 digits
        let zeta = Complex64::new(1e4, 0.0);
        let scaled = s.s2(zeta) * zeta / (2.0 * 1.0);
        assert!((scaled - Complex64::new(1.0, 0.0)).norm() < 1e-6);
        // magnitude keeps the O(1/zeta) envelope far out
        let far = Complex64::new(1e6, 0.0);
        assert!(s.s2(far).norm() < 3.0 / 1e6);
    }

    #[test]
    fn s1_coefficient_reduction() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let s = schwarz_decompose(&g);
        assert!((s.s1_coeff() - 1.0 / 3.0).abs() < 1e-15);
    }
}
