//! Lenses built from conformal images of the unit disk.
//!
//! For a uniform density on Omega = phi(unit disk) with phi rational, the
//! exterior Cauchy transform collapses to finitely many kernel terms:
//! pulling (1/2 pi i) contour of conj(zeta) dzeta / (z - zeta) back through
//! phi turns it into a residue computation at the preimages t_j = 1/conj(beta_j)
//! of the map's poles, plus a multipole at phi(0) when the numerator degree
//! exceeds the denominator's. Each residue contributes weight / (z - node)
//! terms with generally complex weights, after which the exterior lens
//! equation is rational in z and the polynomial pipeline applies. Images are
//! reported only outside Omega; membership is decided by the winding of the
//! mapped boundary.

use crate::analytic_reduction::{cluster_roots, polynomialize, roots, Polynomial, RationalFunction};
use crate::error::{LensError, Result};
use crate::harmonic_solver::{Image, ImageSet, Location};
use crate::lens_models::JacobianInfo;
use num_complex::Complex64;
use std::f64::consts::PI;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const BOUNDARY_SAMPLES: usize = 4096;

/// A rational map certified injective on the closed unit disk, with all
/// poles strictly outside it.
#[derive(Debug, Clone)]
pub struct ConformalMap {
    numerator: Polynomial,
    denominator: Polynomial,
    degree: usize,
    poles: Vec<Complex64>,
    boundary: Vec<Complex64>,
}

impl ConformalMap {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(LensError::InvalidGeometry(
                "conformal map with zero denominator".into(),
            ));
        }
        let deg_n = numerator.degree().unwrap_or(0);
        let deg_d = denominator.degree().unwrap_or(0);
        let degree = deg_n.max(deg_d);
        if numerator.is_zero() || degree == 0 {
            return Err(LensError::InvalidGeometry(
                "conformal map must be nonconstant".into(),
            ));
        }
        let poles = if deg_d > 0 {
            roots(&denominator)?
        } else {
            Vec::new()
        };
        for (pole, mult) in cluster_roots(&poles, 1e-8) {
            if mult > 1 {
                return Err(LensError::InvalidGeometry(format!(
                    "repeated denominator root at {pole}: only simple poles are handled"
                )));
            }
            if pole.norm() <= 1.0 + 1e-9 {
                return Err(LensError::InvalidGeometry(format!(
                    "pole at {pole} is not strictly outside the closed unit disk"
                )));
            }
        }
        let mut map = ConformalMap {
            numerator,
            denominator,
            degree,
            poles,
            boundary: Vec::new(),
        };
        map.boundary = (0..BOUNDARY_SAMPLES)
            .map(|k| {
                let t = Complex64::new(0.0, 2.0 * PI * k as f64 / BOUNDARY_SAMPLES as f64).exp();
                map.eval(t)
            })
            .collect();
        map.certify_injective()?;
        Ok(map)
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.numerator.eval(t) / self.denominator.eval(t)
    }

    pub fn derivative(&self, t: Complex64) -> Complex64 {
        let n = self.numerator.eval(t);
        let d = self.denominator.eval(t);
        let np = self.numerator.derivative().eval(t);
        let dp = self.denominator.derivative().eval(t);
        (np * d - n * dp) / (d * d)
    }

    /// The map with conjugated coefficients; on the unit circle
    /// conj(phi(t)) equals this at 1/t.
    pub fn conj_eval(&self, s: Complex64) -> Complex64 {
        self.numerator.conj_coeffs().eval(s) / self.denominator.conj_coeffs().eval(s)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn boundary(&self) -> &[Complex64] {
        &self.boundary
    }

    /// Area of Omega by the boundary integral (1/2i) contour of conj(z) dz,
    /// evaluated spectrally on the sampled circle.
    pub fn area(&self) -> f64 {
        let n = BOUNDARY_SAMPLES;
        let mut acc = ZERO;
        for k in 0..n {
            let t = Complex64::new(0.0, 2.0 * PI * k as f64 / n as f64).exp();
            acc += self.eval(t).conj() * self.derivative(t) * t;
        }
        (acc * PI / n as f64).re
    }

    /// Membership in Omega by the winding of the sampled boundary.
    pub fn contains(&self, z: Complex64) -> bool {
        let n = self.boundary.len();
        let mut total = 0.0;
        for k in 0..n {
            let a = self.boundary[k] - z;
            let b = self.boundary[(k + 1) % n] - z;
            total += (b / a).arg();
        }
        total.abs() > PI
    }

    /// Sampled injectivity: the boundary polyline must be simple and the
    /// derivative must not vanish on a disk grid. Failing maps are rejected;
    /// a pass is evidence, not proof.
    fn certify_injective(&self) -> Result<()> {
        let n = self.boundary.len();
        for i in 0..n {
            let (a1, a2) = (self.boundary[i], self.boundary[(i + 1) % n]);
            for j in (i + 2)..n {
                // skip the pair sharing the wrap-around endpoint
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (b1, b2) = (self.boundary[j], self.boundary[(j + 1) % n]);
                if segments_cross(a1, a2, b1, b2) {
                    return Err(LensError::NotInjective(format!(
                        "mapped boundary self-intersects near {a1}"
                    )));
                }
            }
        }
        for ir in 0..=16 {
            let r = ir as f64 / 16.0;
            let steps = if ir == 0 { 1 } else { 64 };
            for k in 0..steps {
                let t = r * Complex64::new(0.0, 2.0 * PI * k as f64 / steps as f64).exp();
                if self.derivative(t).norm() < 1e-12 {
                    return Err(LensError::NotInjective(format!(
                        "derivative vanishes at t = {t}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn segments_cross(a1: Complex64, a2: Complex64, b1: Complex64, b2: Complex64) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0)
}

/// One quadrature node: weights[p] multiplies 1/(z - position)^(p+1).
#[derive(Debug, Clone)]
pub struct QuadratureNode {
    pub position: Complex64,
    pub weights: Vec<Complex64>,
}

/// The finite-node representation of the exterior Cauchy transform.
#[derive(Debug, Clone)]
pub struct QuadratureData {
    pub nodes: Vec<QuadratureNode>,
    /// density * area / pi; equals the sum of the first-order weights.
    pub total_mass: f64,
    pub density: f64,
}

impl QuadratureData {
    /// Coefficients of the simple-pole terms, one per node.
    pub fn first_moments(&self) -> Vec<Complex64> {
        self.nodes.iter().map(|n| n.weights[0]).collect()
    }

    /// The reduced exterior transform: sum of kernel terms over all nodes.
    pub fn cauchy_transform(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for node in &self.nodes {
            let inv = ONE / (z - node.position);
            let mut kernel = inv;
            for &wp in &node.weights {
                acc += wp * kernel;
                kernel *= inv;
            }
        }
        acc
    }
}

/// (1/2 pi i) contour integral of conj-map(1/t) phi'(t) (phi(t) - z0)^power
/// over a circle, by the trapezoid rule (spectrally accurate here since the
/// integrand is analytic in an annulus around the contour).
fn contour_moment(
    map: &ConformalMap,
    center: Complex64,
    radius: f64,
    power: usize,
    z0: Complex64,
) -> Complex64 {
    let n = 1024;
    let mut acc = ZERO;
    for k in 0..n {
        let dir = Complex64::new(0.0, 2.0 * PI * k as f64 / n as f64).exp();
        let t = center + radius * dir;
        let mut val = map.conj_eval(ONE / t) * map.derivative(t);
        for _ in 0..power {
            val *= map.eval(t) - z0;
        }
        acc += val * radius * dir;
    }
    acc / n as f64
}

/// Computes the nodes z_j and weights c_j with
/// density/pi * integral over Omega of dA / (z - zeta) = sum c_j kernel terms
/// for every z outside Omega. Pole preimages give simple-kernel nodes; a
/// polynomial part of the map gives one multipole node at phi(0).
pub fn nodes_and_weights(map: &ConformalMap, density: f64) -> Result<QuadratureData> {
    if !(density > 0.0) || !density.is_finite() {
        return Err(LensError::InvalidGeometry(format!(
            "density must be positive and finite, got {density}"
        )));
    }
    let preimages: Vec<Complex64> = map.poles().iter().map(|b| ONE / b.conj()).collect();
    let deg_n = map.numerator.degree().unwrap_or(0);
    let deg_d = map.denominator.degree().unwrap_or(0);
    let origin_order = deg_n.saturating_sub(deg_d);
    let mut nodes = Vec::new();
    for (j, &tj) in preimages.iter().enumerate() {
        let mut clearance = 1.0 - tj.norm();
        for (k, &tk) in preimages.iter().enumerate() {
            if k != j {
                clearance = clearance.min((tj - tk).norm());
            }
        }
        if origin_order > 0 {
            clearance = clearance.min(tj.norm());
        }
        let radius = 0.5 * clearance;
        let weight = density * contour_moment(map, tj, radius, 0, ZERO);
        nodes.push(QuadratureNode {
            position: map.eval(tj),
            weights: vec![weight],
        });
    }
    if origin_order > 0 {
        let mut clearance = 1.0_f64;
        for &tj in &preimages {
            clearance = clearance.min(tj.norm());
        }
        let radius = 0.5 * clearance;
        let z0 = map.eval(ZERO);
        let weights = (0..origin_order)
            .map(|p| density * contour_moment(map, ZERO, radius, p, z0))
            .collect();
        nodes.push(QuadratureNode {
            position: z0,
            weights,
        });
    }
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if (nodes[i].position - nodes[j].position).norm() < 1e-8 {
                return Err(LensError::Degenerate(format!(
                    "two quadrature nodes coincide at {}",
                    nodes[i].position
                )));
            }
        }
        if !map.contains(nodes[i].position) {
            return Err(LensError::numerical(
                "nodes_and_weights",
                format!("node {} fell outside the domain", nodes[i].position),
            ));
        }
    }
    let total_mass = density * map.area() / PI;
    let first_sum: Complex64 = nodes.iter().map(|n| n.weights[0]).sum();
    if (first_sum - total_mass).norm() > 1e-6 * total_mass.max(1e-12) {
        return Err(LensError::numerical(
            "nodes_and_weights",
            format!(
                "weight sum {first_sum} disagrees with the domain mass {total_mass}"
            ),
        ));
    }
    Ok(QuadratureData {
        nodes,
        total_mass,
        density,
    })
}

/// The exterior lens induced by a quadrature reduction: finitely many
/// kernel terms (weights generally complex) plus external shear.
#[derive(Debug, Clone)]
pub struct ReducedLens {
    nodes: Vec<QuadratureNode>,
    shear: f64,
}

impl ReducedLens {
    pub fn nodes(&self) -> &[QuadratureNode] {
        &self.nodes
    }

    pub fn shear(&self) -> f64 {
        self.shear
    }

    pub fn deflection(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for node in &self.nodes {
            let inv = ONE / (z - node.position);
            let mut kernel = inv;
            for &wp in &node.weights {
                acc += wp * kernel;
                kernel *= inv;
            }
        }
        acc
    }

    fn deflection_prime(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for node in &self.nodes {
            let inv = ONE / (z - node.position);
            let mut kernel = inv * inv;
            for (p, &wp) in node.weights.iter().enumerate() {
                acc -= wp * (p as f64 + 1.0) * kernel;
                kernel *= inv;
            }
        }
        acc
    }

    pub fn lens_map(&self, z: Complex64) -> Complex64 {
        z - self.deflection(z).conj() - self.shear * z.conj()
    }

    /// (d/dz, d/dconj z) of the lens map.
    pub fn wirtinger(&self, z: Complex64) -> (Complex64, Complex64) {
        (
            ONE,
            -self.deflection_prime(z).conj() - Complex64::new(self.shear, 0.0),
        )
    }

    /// The conjugated lens equation solved for conj(z), cleared over the
    /// common denominator, for the polynomial pipeline.
    fn to_rational(&self, w: Complex64) -> RationalFunction {
        let mut den = Polynomial::constant(ONE);
        for node in &self.nodes {
            let factor = Polynomial::new(vec![-node.position, ONE]);
            for _ in 0..node.weights.len() {
                den = den.mul(&factor);
            }
        }
        let mut num = Polynomial::zero();
        for (j, node) in self.nodes.iter().enumerate() {
            for (p, &wp) in node.weights.iter().enumerate() {
                // den / (z - z_j)^(p+1)
                let mut partial = Polynomial::constant(wp);
                for (k, other) in self.nodes.iter().enumerate() {
                    let factor = Polynomial::new(vec![-other.position, ONE]);
                    let count = if k == j {
                        other.weights.len() - (p + 1)
                    } else {
                        other.weights.len()
                    };
                    for _ in 0..count {
                        partial = partial.mul(&factor);
                    }
                }
                num = num.add(&partial);
            }
        }
        let affine = Polynomial::new(vec![w.conj(), Complex64::new(self.shear, 0.0)]);
        num = num.add(&affine.mul(&den));
        RationalFunction {
            numerator: num,
            denominator: den,
        }
    }

    fn newton_refine(&self, w: Complex64, start: Complex64) -> Option<(Complex64, f64)> {
        let mut z = start;
        let mut f = self.lens_map(z) - w;
        let mut fnorm = f.norm();
        for _ in 0..30 {
            if fnorm < 1e-11 {
                return Some((z, fnorm));
            }
            let (alpha, beta) = self.wirtinger(z);
            let det = alpha.norm_sqr() - beta.norm_sqr();
            if det.abs() < 1e-300 {
                return None;
            }
            let rhs = -f;
            let delta = (alpha.conj() * rhs - beta * rhs.conj()) / det;
            let mut t = 1.0;
            let mut accepted = false;
            while t > 1e-6 {
                let cand = z + t * delta;
                let fc = self.lens_map(cand) - w;
                if fc.norm() <= (1.0 - 1e-4 * t) * fnorm {
                    z = cand;
                    f = fc;
                    fnorm = fc.norm();
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                return None;
            }
        }
        if fnorm < 1e-11 {
            Some((z, fnorm))
        } else {
            None
        }
    }
}

/// Swaps the domain integral for its node sum, with external shear bolted
/// on. The result feeds the same conjugation-substitution pipeline as point
/// masses, except the weights need not be positive reals.
pub fn reduce_to_point_lens(qd: &QuadratureData, shear: f64) -> ReducedLens {
    ReducedLens {
        nodes: qd.nodes.clone(),
        shear,
    }
}

/// All images of source w outside Omega for the reduced lens. Roots landing
/// inside Omega describe the field of a different mass arrangement (the
/// node sum only equals the domain integral outside), so they are discarded
/// along with substitution ghosts.
pub fn solve_exterior_images(
    map: &ConformalMap,
    reduced: &ReducedLens,
    w: Complex64,
) -> Result<ImageSet> {
    let r = reduced.to_rational(w);
    let poly = polynomialize(&r, w)?;
    let candidates = roots(&poly)?;
    let mut images = Vec::new();
    for &root in &candidates {
        if reduced
            .nodes
            .iter()
            .any(|n| (root - n.position).norm() < 1e-10)
        {
            continue;
        }
        let Some((z, residual)) = reduced.newton_refine(w, root) else {
            continue;
        };
        if residual >= 1e-9 || map.contains(z) {
            continue;
        }
        let (alpha, beta) = reduced.wirtinger(z);
        images.push(Image {
            z,
            residual,
            jacobian: JacobianInfo::from_wirtinger(alpha, beta),
            location: Location::Exterior,
        });
    }
    Ok(ImageSet::assemble_named(
        "quadrature_domain".to_string(),
        w,
        images,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scaled_disk(radius: f64) -> ConformalMap {
        ConformalMap::new(
            Polynomial::new(vec![ZERO, c(radius, 0.0)]),
            Polynomial::constant(ONE),
        )
        .unwrap()
    }

    #[test]
    fn disk_map_reduces_to_single_mass() {
        let map = scaled_disk(1.5);
        let qd = nodes_and_weights(&map, 1.0).unwrap();
        assert_eq!(qd.nodes.len(), 1);
        assert!(qd.nodes[0].position.norm() < 1e-12);
        assert!((qd.nodes[0].weights[0] - c(2.25, 0.0)).norm() < 1e-10);
        assert!((qd.total_mass - 2.25).abs() < 1e-10);
        // exterior transform agrees with the closed form R^2 / z
        for k in 1..5 {
            let z = c(2.0 + k as f64, 0.7);
            assert!((qd.cauchy_transform(z) - 2.25 / z).norm() < 1e-10);
        }
    }

    #[test]
    fn moebius_disk_is_an_offset_disk() {
        // t / (1 - s t) maps the unit disk onto the disk with center
        // s/(1-s^2) and radius 1/(1-s^2)
        let s = 0.4;
        let map = ConformalMap::new(
            Polynomial::new(vec![ZERO, ONE]),
            Polynomial::new(vec![ONE, c(-s, 0.0)]),
        )
        .unwrap();
        let qd = nodes_and_weights(&map, 1.0).unwrap();
        assert_eq!(qd.nodes.len(), 1);
        let denom = 1.0 - s * s;
        assert!((qd.nodes[0].position - c(s / denom, 0.0)).norm() < 1e-10);
        assert!((qd.nodes[0].weights[0] - c(1.0 / (denom * denom), 0.0)).norm() < 1e-8);
        assert!((qd.total_mass - 1.0 / (denom * denom)).abs() < 1e-8);
    }

    #[test]
    fn quadratic_map_carries_a_multipole() {
        let q = 0.2;
        let map = ConformalMap::new(
            Polynomial::new(vec![ZERO, ONE, c(q, 0.0)]),
            Polynomial::constant(ONE),
        )
        .unwrap();
        assert_eq!(map.degree(), 2);
        let qd = nodes_and_weights(&map, 1.0).unwrap();
        assert_eq!(qd.nodes.len(), 1);
        assert_eq!(qd.nodes[0].weights.len(), 2);
        // area of the image of the unit disk under t + q t^2 is pi (1 + 2 q^2)
        assert!((qd.total_mass - (1.0 + 2.0 * q * q)).abs() < 1e-10);
        assert!((qd.nodes[0].weights[0] - c(1.0 + 2.0 * q * q, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn bad_maps_are_rejected() {
        // pole inside the disk
        assert!(ConformalMap::new(
            Polynomial::new(vec![ZERO, ONE]),
            Polynomial::new(vec![ONE, c(-2.0, 0.0)]),
        )
        .is_err());
        // large quadratic coefficient breaks injectivity (phi' vanishes
        // inside the disk at t = -1/(2q))
        assert!(matches!(
            ConformalMap::new(
                Polynomial::new(vec![ZERO, ONE, c(0.8, 0.0)]),
                Polynomial::constant(ONE),
            ),
            Err(LensError::NotInjective(_))
        ));
    }

    #[test]
    fn membership_test_tracks_the_boundary() {
        let map = scaled_disk(1.5);
        assert!(map.contains(c(0.3, 0.2)));
        assert!(map.contains(c(1.4, 0.0)));
        assert!(!map.contains(c(1.6, 0.0)));
        assert!(!map.contains(c(0.0, 2.0)));
    }

    #[test]
    fn disk_reduction_matches_point_lens_images() {
        use crate::lens_models::{LensModel, PointMassLens};
        let map = scaled_disk(1.0);
        let qd = nodes_and_weights(&map, 1.0).unwrap();
        let reduced = reduce_to_point_lens(&qd, 0.0);
        let w = c(0.4, 0.1);
        let set = solve_exterior_images(&map, &reduced, w).unwrap();
        let lens = LensModel::PointMasses(
            PointMassLens::new(vec![(1.0, ZERO)], 0.0).unwrap(),
        );
        let reference = crate::harmonic_solver::solve_all(&lens, w).unwrap();
        // the exterior image of the point lens (the one outside |z| = 1)
        let exterior: Vec<_> = reference
            .images
            .iter()
            .filter(|i| i.z.norm() > 1.0)
            .collect();
        assert_eq!(set.len(), exterior.len());
        for (got, want) in set.images.iter().zip(exterior) {
            assert!((got.z - want.z).norm() < 1e-9);
        }
    }
}
