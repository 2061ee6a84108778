//! Einstein rings: continuum image curves for perfectly aligned sources.
//!
//! A point mass with an aligned source images onto the circle |z| = sqrt(sigma).
//! For the uniform ellipse the aligned source can also produce a ring, but
//! only with one specific external shear, and the ring is then an ellipse
//! confocal with the lens. Both constructions are closed-form here; the
//! verifier takes an arbitrary sampled curve and reports how ring-like it is
//! (lens-equation residual, best-fit circle and conic, confocal defect).

use crate::error::{LensError, Result};
use crate::lens_models::{EllipseGeometry, LensModel, PointMassLens, UniformEllipseLens};
use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Circle,
    Ellipse,
}

/// A constructed Einstein ring.
#[derive(Debug, Clone)]
pub struct RingSolution {
    pub kind: RingKind,
    pub center: Complex64,
    /// (A, B) with A >= B.
    pub semi_axes: (f64, f64),
    /// Major-axis direction in radians.
    pub rotation: f64,
    /// External shear required for this ring to exist.
    pub shear_used: f64,
    /// Max lens-equation residual over the verification samples.
    pub residual_max: f64,
    /// |A^2 - B^2 - c^2| against the lens focal distance, when the lens has
    /// focal structure.
    pub confocal_defect: Option<f64>,
}

impl RingSolution {
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        let (big_a, big_b) = self.semi_axes;
        let rot = Complex64::new(0.0, self.rotation).exp();
        (0..n)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / n as f64;
                let p = Complex64::new(big_a * theta.cos(), big_b * theta.sin());
                self.center + rot * p
            })
            .collect()
    }
}

fn max_residual(lens: &LensModel, points: &[Complex64], w: Complex64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &z in points {
        worst = worst.max((lens.lens_map(z)? - w).norm());
    }
    Ok(worst)
}

/// The ring of an aligned source behind a single mass at the origin with no
/// shear: the circle of radius sqrt(sigma).
pub fn point_mass_ring(sigma: f64) -> Result<RingSolution> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(LensError::InvalidGeometry(format!(
            "ring mass must be positive and finite, got {sigma}"
        )));
    }
    let radius = sigma.sqrt();
    let mut ring = RingSolution {
        kind: RingKind::Circle,
        center: Complex64::new(0.0, 0.0),
        semi_axes: (radius, radius),
        rotation: 0.0,
        shear_used: 0.0,
        residual_max: 0.0,
        confocal_defect: None,
    };
    let lens = LensModel::PointMasses(PointMassLens::new(
        vec![(sigma, Complex64::new(0.0, 0.0))],
        0.0,
    )?);
    ring.residual_max = max_residual(&lens, &ring.sample(256), Complex64::new(0.0, 0.0))?;
    Ok(ring)
}

/// Finds the shear and the confocal ellipse on which an aligned source
/// images as a ring around a uniform elliptical lens.
///
/// Candidate curves are parametrized in Joukowski form
/// z(theta) = R e^{i theta} + (c^2 / 4R) e^{-i theta}, which sweeps the
/// confocal ellipses with semi-axes R +- c^2/4R as R varies. On such a
/// curve z - sqrt(z^2 - c^2) = (c^2/2R) e^{-i theta}, so the aligned lens
/// equation splits into one coefficient equation per rotation direction:
///
///   e^{+i theta}:  R - density * a * b / R - shear * c^2 / (4 R) = 0
///   e^{-i theta}:  c^2 / (4 R) - shear * R = 0
///
/// Eliminating shear = c^2 / (4 R^2) leaves a quadratic in R^2 with a single
/// positive branch, so the admissible ring (when it exists) is unique. It
/// clears the lens boundary exactly when the density exceeds 1; below that
/// the candidate curve cuts into the ellipse and there is no ring.
pub fn find_ring_uniform_ellipse(
    geometry: &EllipseGeometry,
    density: f64,
) -> Result<RingSolution> {
    if !(density > 0.0) || !density.is_finite() {
        return Err(LensError::InvalidGeometry(format!(
            "density must be positive and finite, got {density}"
        )));
    }
    let (a, b) = (geometry.semi_major(), geometry.semi_minor());
    let c2 = geometry.focal_distance().powi(2);
    if density <= 1.0 {
        return Err(LensError::NoRing(format!(
            "density {density} <= 1: the candidate curve does not clear the lens boundary"
        )));
    }
    let r2 = (density * a * b + ((density * a * b).powi(2) + c2 * c2 / 4.0).sqrt()) / 2.0;
    let r = r2.sqrt();
    let shear = c2 / (4.0 * r2);
    let big_a = r + c2 / (4.0 * r);
    let big_b = r - c2 / (4.0 * r);
    if big_b <= b {
        return Err(LensError::NoRing(format!(
            "ring semi-minor {big_b} does not clear the lens semi-minor {b}"
        )));
    }
    let mut ring = RingSolution {
        kind: RingKind::Ellipse,
        center: Complex64::new(0.0, 0.0),
        semi_axes: (big_a, big_b),
        rotation: 0.0,
        shear_used: shear,
        residual_max: 0.0,
        confocal_defect: Some((big_a * big_a - big_b * big_b - c2).abs()),
    };
    let lens = LensModel::UniformEllipse(UniformEllipseLens::new(
        geometry.clone(),
        density,
        shear,
    )?);
    ring.residual_max = max_residual(&lens, &ring.sample(256), Complex64::new(0.0, 0.0))?;
    Ok(ring)
}

/// Least-squares circle through the samples.
#[derive(Debug, Clone)]
pub struct CircleFit {
    pub center: Complex64,
    pub radius: f64,
    pub rms: f64,
}

/// Least-squares conic through the samples, reduced to center/axes form.
#[derive(Debug, Clone)]
pub struct ConicFit {
    pub center: Complex64,
    /// (A, B) with A >= B.
    pub semi_axes: (f64, f64),
    pub rotation: f64,
    /// RMS of the algebraic conic residual under unit-trace normalization.
    pub rms: f64,
}

/// What `verify_ring` reports about a sampled curve.
#[derive(Debug, Clone)]
pub struct RingDiagnostics {
    pub residual_max: f64,
    /// True when the curve solves the lens equation to 1e-9 everywhere.
    pub is_ring: bool,
    pub circle: CircleFit,
    /// None when the best conic is not an ellipse.
    pub ellipse: Option<ConicFit>,
    /// |A^2 - B^2 - c^2| of the fitted ellipse against the lens focal
    /// distance, for lenses with an elliptical support.
    pub confocal_defect: Option<f64>,
}

fn fit_circle(points: &[Complex64]) -> Result<CircleFit> {
    // linear formulation: |z|^2 = 2 cx x + 2 cy y + (r^2 - |c|^2)
    let mut m = Matrix3::zeros();
    let mut rhs = Vector3::zeros();
    for z in points {
        let row = Vector3::new(z.re, z.im, 1.0);
        let target = z.norm_sqr();
        m += row * row.transpose();
        rhs += row * target;
    }
    let sol = m.lu().solve(&rhs).ok_or_else(|| {
        LensError::numerical("fit_circle", "normal equations are singular")
    })?;
    let center = Complex64::new(sol[0] / 2.0, sol[1] / 2.0);
    let r2 = sol[2] + center.norm_sqr();
    if r2 <= 0.0 {
        return Err(LensError::numerical(
            "fit_circle",
            "negative squared radius from the fit",
        ));
    }
    let radius = r2.sqrt();
    let mut sq = 0.0;
    for z in points {
        sq += ((z - center).norm() - radius).powi(2);
    }
    Ok(CircleFit {
        center,
        radius,
        rms: (sq / points.len() as f64).sqrt(),
    })
}

fn fit_conic(points: &[Complex64]) -> Option<ConicFit> {
    // general conic a x^2 + b xy + c y^2 + d x + e y + f = 0 normalized by
    // a + c = 1; substituting c = 1 - a gives a linear system in
    // (a, b, d, e, f) with right side -y^2
    let n = points.len();
    let mut m = DMatrix::zeros(n, 5);
    let mut rhs = DVector::zeros(n);
    for (i, z) in points.iter().enumerate() {
        let (x, y) = (z.re, z.im);
        m[(i, 0)] = x * x - y * y;
        m[(i, 1)] = x * y;
        m[(i, 2)] = x;
        m[(i, 3)] = y;
        m[(i, 4)] = 1.0;
        rhs[i] = -y * y;
    }
    let svd = m.clone().svd(true, true);
    let sol = svd.solve(&rhs, 1e-14).ok()?;
    let (pa, pb, pd, pe, pf) = (sol[0], sol[1], sol[2], sol[3], sol[4]);
    let pc = 1.0 - pa;
    let mut sq = 0.0;
    for z in points {
        let (x, y) = (z.re, z.im);
        sq += (pa * x * x + pb * x * y + pc * y * y + pd * x + pe * y + pf).powi(2);
    }
    let rms = (sq / n as f64).sqrt();
    // center from the gradient zero of the quadratic form
    let det = 4.0 * pa * pc - pb * pb;
    if det.abs() < 1e-14 {
        return None;
    }
    let x0 = (-2.0 * pc * pd + pb * pe) / det;
    let y0 = (-2.0 * pa * pe + pb * pd) / det;
    let f0 = pf + (pd * x0 + pe * y0) / 2.0;
    // eigen-decompose [[a, b/2], [b/2, c]]
    let half = (pa + pc) / 2.0;
    let diff = (pa - pc) / 2.0;
    let off = pb / 2.0;
    let spread = (diff * diff + off * off).sqrt();
    let l1 = half - spread;
    let l2 = half + spread;
    if !(l1 > 0.0 && l2 > 0.0 && -f0 > 0.0) {
        return None;
    }
    let big_a = (-f0 / l1).sqrt();
    let big_b = (-f0 / l2).sqrt();
    // major axis along the eigenvector of the smaller eigenvalue
    let rotation = if off.abs() < 1e-14 && diff >= 0.0 {
        std::f64::consts::FRAC_PI_2
    } else if off.abs() < 1e-14 {
        0.0
    } else {
        (l1 - pa).atan2(off)
    };
    Some(ConicFit {
        center: Complex64::new(x0, y0),
        semi_axes: (big_a, big_b),
        rotation,
        rms,
    })
}

fn lens_focal_distance(lens: &LensModel) -> Option<f64> {
    match lens {
        LensModel::UniformEllipse(l) => Some(l.geometry().focal_distance()),
        LensModel::ConfocalProfile(l) => Some(l.geometry().focal_distance()),
        LensModel::IsothermalEllipse(l) => Some(l.geometry().focal_distance()),
        _ => None,
    }
}

fn curve_enters_support(lens: &LensModel, points: &[Complex64]) -> bool {
    points.iter().any(|&z| {
        crate::harmonic_solver::classify_location(lens, z)
            == crate::harmonic_solver::Location::Interior
    })
}

/// Measures how well a sampled closed curve solves the lens equation for
/// source w, and reports the best-fit circle and ellipse so the shape claim
/// (circle without shear, confocal ellipse with shear) can be checked
/// against data.
pub fn verify_ring(
    lens: &LensModel,
    curve: &[Complex64],
    w: Complex64,
) -> Result<RingDiagnostics> {
    if curve.len() < 8 {
        return Err(LensError::InvalidGeometry(format!(
            "ring verification needs at least 8 samples, got {}",
            curve.len()
        )));
    }
    if curve_enters_support(lens, curve) {
        return Err(LensError::UnsupportedRegion {
            model: lens.name(),
            detail: "candidate ring curve enters the mass support".into(),
        });
    }
    let residual_max = max_residual(lens, curve, w)?;
    let circle = fit_circle(curve)?;
    let ellipse = fit_conic(curve);
    let confocal_defect = match (&ellipse, lens_focal_distance(lens)) {
        (Some(fit), Some(c)) => {
            let (big_a, big_b) = fit.semi_axes;
            Some((big_a * big_a - big_b * big_b - c * c).abs())
        }
        _ => None,
    };
    Ok(RingDiagnostics {
        residual_max,
        is_ring: residual_max < 1e-9,
        circle,
        ellipse,
        confocal_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_ring_radii() {
        let ring = point_mass_ring(1.0).unwrap();
        assert_eq!(ring.kind, RingKind::Circle);
        assert!((ring.semi_axes.0 - 1.0).abs() < 1e-15);
        assert!(ring.residual_max < 1e-14);

        let ring = point_mass_ring(4.0).unwrap();
        assert!((ring.semi_axes.0 - 2.0).abs() < 1e-15);
        assert!(ring.residual_max < 1e-14);
    }

    #[test]
    fn ellipse_ring_closed_form() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let ring = find_ring_uniform_ellipse(&g, 2.0).unwrap();
        assert_eq!(ring.kind, RingKind::Ellipse);
        assert!(ring.residual_max < 1e-9, "residual {}", ring.residual_max);
        assert!(ring.confocal_defect.unwrap() < 1e-8);
        let (big_a, big_b) = ring.semi_axes;
        assert!(big_a > 2.0 && big_b > 1.0, "ring must clear the lens");
        // regression against the closed form
        assert!((ring.shear_used - 0.18133458177251038).abs() < 1e-12);
        assert!((big_a - 2.402499089002692).abs() < 1e-12);
    }

    #[test]
    fn low_density_has_no_ring() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        assert!(matches!(
            find_ring_uniform_ellipse(&g, 1.0),
            Err(LensError::NoRing(_))
        ));
        assert!(matches!(
            find_ring_uniform_ellipse(&g, 0.5),
            Err(LensError::NoRing(_))
        ));
    }

    #[test]
    fn nearly_circular_lens_ring_tends_to_circle() {
        let g = EllipseGeometry::new(1.0, 0.999).unwrap();
        let ring = find_ring_uniform_ellipse(&g, 2.0).unwrap();
        let (big_a, big_b) = ring.semi_axes;
        assert!(big_a - big_b < 1e-3);
        assert!(ring.shear_used < 1e-3);
        assert!(ring.residual_max < 1e-9);
    }

    #[test]
    fn verifier_accepts_real_rings() {
        let ring = point_mass_ring(1.0).unwrap();
        let lens = LensModel::PointMasses(
            PointMassLens::new(vec![(1.0, Complex64::new(0.0, 0.0))], 0.0).unwrap(),
        );
        let diag = verify_ring(&lens, &ring.sample(256), Complex64::new(0.0, 0.0)).unwrap();
        assert!(diag.is_ring);
        assert!(diag.circle.rms < 1e-12);
        assert!(diag.circle.center.norm() < 1e-12);
        assert!((diag.circle.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn verifier_flags_perturbed_curves() {
        let ring = point_mass_ring(1.0).unwrap();
        let lens = LensModel::PointMasses(
            PointMassLens::new(vec![(1.0, Complex64::new(0.0, 0.0))], 0.0).unwrap(),
        );
        let noisy: Vec<Complex64> = ring
            .sample(256)
            .into_iter()
            .enumerate()
            .map(|(k, z)| {
                let theta = 2.0 * PI * k as f64 / 256.0;
                z * (1.0 + 1e-3 * (3.0 * theta).cos())
            })
            .collect();
        let diag = verify_ring(&lens, &noisy, Complex64::new(0.0, 0.0)).unwrap();
        assert!(diag.residual_max > 1e-4);
        assert!(!diag.is_ring);
    }

    #[test]
    fn verifier_rejects_curves_through_the_lens() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let lens = LensModel::UniformEllipse(UniformEllipseLens::new(g, 2.0, 0.0).unwrap());
        let bad: Vec<Complex64> = (0..64)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 64.0;
                Complex64::new(1.5 * t.cos(), 1.5 * t.sin())
            })
            .collect();
        assert!(matches!(
            verify_ring(&lens, &bad, Complex64::new(0.0, 0.0)),
            Err(LensError::UnsupportedRegion { .. })
        ));
    }

    #[test]
    fn ellipse_ring_fits_confocal_conic() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let ring = find_ring_uniform_ellipse(&g, 2.0).unwrap();
        let lens = LensModel::UniformEllipse(
            UniformEllipseLens::new(g, 2.0, ring.shear_used).unwrap(),
        );
        let diag = verify_ring(&lens, &ring.sample(256), Complex64::new(0.0, 0.0)).unwrap();
        assert!(diag.is_ring);
        let fit = diag.ellipse.expect("conic fit should be an ellipse");
        assert!(fit.rms < 1e-9, "conic rms {}", fit.rms);
        assert!((fit.semi_axes.0 - ring.semi_axes.0).abs() < 1e-8);
        assert!((fit.semi_axes.1 - ring.semi_axes.1).abs() < 1e-8);
        assert!(diag.confocal_defect.unwrap() < 1e-8);
    }
}
