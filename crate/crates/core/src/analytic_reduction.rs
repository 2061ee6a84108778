//! Reduction of rational-deflection lens equations to a single polynomial.
//!
//! For point masses the conjugated lens equation expresses conj(z) as a
//! rational function r(z) with poles at the deflectors. Substituting that
//! back into the original equation removes every conjugate and leaves
//! z - r*(r(z)) = 0, where r* carries the conjugated coefficients of r.
//! Clearing denominators produces one analytic polynomial whose roots
//! contain all images (plus substitution ghosts, removed afterwards by
//! checking the genuine equation).

use crate::error::{lex_cmp, LensError, Result};
use crate::harmonic_solver::{classify_location, newton_refine, Image, ImageSet};
use crate::lens_models::{ChangRefsdalLens, LensModel, PointMassLens};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense polynomial with complex coefficients in ascending degree order.
/// The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Trailing coefficients below 1e-14 of the largest are trimmed; such a
    /// leading term is indistinguishable from cancellation noise and would
    /// only manufacture roots out at 1e14 scales.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(value: Complex64) -> Self {
        Polynomial::new(vec![value])
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Polynomial { coeffs }
    }

    fn trim(&mut self) {
        let max = self.max_abs();
        let cut = 1e-14 * max;
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= cut {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner pass producing (p(z), p'(z)) together.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut d = ZERO;
        for &c in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Multiplies by z^k.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// The polynomial with every coefficient conjugated.
    pub fn conj_coeffs(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// Quotient of two polynomials; the denominator is never identically zero.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(LensError::InvalidGeometry(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(RationalFunction {
            numerator,
            denominator,
        })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.numerator.eval(z) / self.denominator.eval(z)
    }

    pub fn conj_coeffs(&self) -> RationalFunction {
        RationalFunction {
            numerator: self.numerator.conj_coeffs(),
            denominator: self.denominator.conj_coeffs(),
        }
    }
}

/// Builds the rational function r with r(z) = conj(z) on every image, for a
/// general weighted sum of simple poles plus shear. Weights may be complex
/// (quadrature-domain reductions produce such lenses); physical point masses
/// pass positive reals.
pub fn build_r_from_components(
    weights: &[Complex64],
    positions: &[Complex64],
    shear: f64,
    w: Complex64,
) -> RationalFunction {
    assert_eq!(weights.len(), positions.len());
    let mut denominator = Polynomial::constant(Complex64::new(1.0, 0.0));
    for &p in positions {
        denominator = denominator.mul(&Polynomial::new(vec![-p, Complex64::new(1.0, 0.0)]));
    }
    let mut numerator = Polynomial::zero();
    for (j, (&cj, &pj)) in weights.iter().zip(positions).enumerate() {
        let mut partial = Polynomial::constant(cj);
        for (k, &pk) in positions.iter().enumerate() {
            if k != j {
                partial = partial.mul(&Polynomial::new(vec![-pk, Complex64::new(1.0, 0.0)]));
            }
        }
        let _ = pj;
        numerator = numerator.add(&partial);
    }
    let affine = Polynomial::new(vec![w.conj(), Complex64::new(shear, 0.0)]);
    numerator = numerator.add(&affine.mul(&denominator));
    RationalFunction {
        numerator,
        denominator,
    }
}

/// r(z) = sum sigma_j / (z - z_j) + shear * z + conj(w), over the common
/// denominator prod (z - z_j). On an image, r(z) equals conj(z).
pub fn build_r(lens: &PointMassLens, w: Complex64) -> RationalFunction {
    let weights: Vec<Complex64> = lens
        .masses()
        .iter()
        .map(|&(sigma, _)| Complex64::new(sigma, 0.0))
        .collect();
    let positions: Vec<Complex64> = lens.masses().iter().map(|&(_, p)| p).collect();
    build_r_from_components(&weights, &positions, lens.shear(), w)
}

/// Eliminates conj(z) by substituting conj(z) = r(z) into the conjugated
/// deflection, then clears denominators. With r = N/D and M the larger of
/// the two degrees, the result is
///
///   z * sum_k conj(d_k) N^k D^(M-k)  -  sum_k conj(n_k) N^k D^(M-k),
///
/// a polynomial whose roots contain every image. If every coefficient
/// cancels (below 1e-12 of the summand scale) the solution set is a
/// continuum and the configuration belongs to the rings module.
pub fn polynomialize(r: &RationalFunction, w: Complex64) -> Result<Polynomial> {
    let nn = &r.numerator;
    let dd = &r.denominator;
    let m = nn
        .degree()
        .unwrap_or(0)
        .max(dd.degree().unwrap_or(0));
    let mut n_pows = Vec::with_capacity(m + 1);
    let mut d_pows = Vec::with_capacity(m + 1);
    let one = Polynomial::constant(Complex64::new(1.0, 0.0));
    n_pows.push(one.clone());
    d_pows.push(one);
    for k in 1..=m {
        n_pows.push(n_pows[k - 1].mul(nn));
        d_pows.push(d_pows[k - 1].mul(dd));
    }
    let mut acc_d = Polynomial::zero();
    let mut acc_n = Polynomial::zero();
    let mut scale = 0.0_f64;
    for k in 0..=m {
        let term = n_pows[k].mul(&d_pows[m - k]);
        let tmax = term.max_abs();
        let dk = dd.coeff(k).conj();
        let nk = nn.coeff(k).conj();
        scale = scale.max(dk.norm() * tmax).max(nk.norm() * tmax);
        if dk != ZERO {
            acc_d = acc_d.add(&term.scale(dk));
        }
        if nk != ZERO {
            acc_n = acc_n.add(&term.scale(nk));
        }
    }
    let poly = acc_d.shift_up(1).sub(&acc_n);
    if poly.max_abs() <= 1e-12 * scale {
        return Err(LensError::Degenerate(format!(
            "every coefficient cancels for source w = {w}: the solution set is a continuum, \
             not isolated points"
        )));
    }
    Ok(poly)
}

/// Quartic for the point mass with external shear: with
/// q(z) = shear * z^2 + conj(w) * z + mass (the conjugated equation cleared
/// of its pole, so conj(z) = q(z)/z on images), the substituted equation is
/// z^2 q - mass z^2 - shear q^2 - w z q = 0. The unsheared aligned source
/// cancels everything, which is the ring configuration.
pub fn polynomialize_chang_refsdal(lens: &ChangRefsdalLens, w: Complex64) -> Result<Polynomial> {
    let mass = Complex64::new(lens.mass(), 0.0);
    let shear = Complex64::new(lens.shear(), 0.0);
    let q = Polynomial::new(vec![mass, w.conj(), shear]);
    let z2 = Polynomial::monomial(2);
    let terms = [
        z2.mul(&q),
        z2.scale(-mass),
        q.mul(&q).scale(-shear),
        q.shift_up(1).scale(-w),
    ];
    let scale = terms.iter().map(Polynomial::max_abs).fold(0.0, f64::max);
    let mut poly = Polynomial::zero();
    for t in &terms {
        poly = poly.add(t);
    }
    if poly.max_abs() <= 1e-12 * scale {
        return Err(LensError::Degenerate(format!(
            "aligned unsheared source: the images form the ring |z| = {}",
            lens.mass().sqrt()
        )));
    }
    Ok(poly)
}

/// All roots of p, exact zeros split off first, the rest found by the
/// simultaneous Aberth refinement from a circle of starts and polished by
/// plain Newton. Residuals are validated against
/// |p(root)| / (max|coeff| * (1 + |root|)^degree) < 1e-12.
pub fn roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let degree = p
        .degree()
        .ok_or_else(|| LensError::Degenerate("root search on the zero polynomial".into()))?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let mut zero_mult = 0;
    while zero_mult < degree && p.coeff(zero_mult) == ZERO {
        zero_mult += 1;
    }
    let reduced = Polynomial {
        coeffs: p.coeffs[zero_mult..].to_vec(),
    };
    let mut found = vec![ZERO; zero_mult];
    let d = degree - zero_mult;
    if d == 0 {
        return Ok(found);
    }
    let lead = reduced.coeff(d);
    if d == 1 {
        found.push(-reduced.coeff(0) / lead);
        return validate_roots(p, degree, found);
    }
    let bound = 1.0
        + reduced.coeffs[..d]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / d as f64 + 0.4;
            bound * Complex64::new(0.0, angle).exp()
        })
        .collect();
    let mut converged = false;
    for _ in 0..200 {
        let mut max_step = 0.0_f64;
        for i in 0..d {
            let (pv, dv) = reduced.eval_with_derivative(zs[i]);
            if pv == ZERO {
                continue;
            }
            let t = if dv == ZERO {
                // sitting on a critical point; nudge off it
                let nudge = 1e-8 * (1.0 + zs[i].norm());
                zs[i] += Complex64::new(nudge, 0.0);
                continue;
            } else {
                pv / dv
            };
            let mut s = ZERO;
            for j in 0..d {
                if j != i {
                    s += 1.0 / (zs[i] - zs[j]);
                }
            }
            let denom = Complex64::new(1.0, 0.0) - t * s;
            let delta = if denom.norm() < 1e-300 { t } else { t / denom };
            zs[i] -= delta;
            max_step = max_step.max(delta.norm() / (1.0 + zs[i].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    for z in &mut zs {
        for _ in 0..20 {
            let (pv, dv) = reduced.eval_with_derivative(*z);
            if dv == ZERO {
                break;
            }
            let step = pv / dv;
            *z -= step;
            if step.norm() < 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
    }
    let _ = converged;
    found.extend(zs);
    validate_roots(p, degree, found)
}

fn validate_roots(p: &Polynomial, degree: usize, roots: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let cmax = p.max_abs();
    for &z in &roots {
        let denom = cmax * (1.0 + z.norm()).powi(degree as i32);
        if p.eval(z).norm() >= 1e-12 * denom {
            return Err(LensError::RootsUnconverged { iterations: 200 });
        }
    }
    Ok(roots)
}

/// Merges roots closer than `tol` and reports each cluster's centroid with
/// its multiplicity.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut sorted = roots.to_vec();
    sorted.sort_by(|a, b| lex_cmp(*a, *b));
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in sorted {
        if let Some((centroid, count)) = clusters
            .iter_mut()
            .find(|(centroid, _)| (*centroid - z).norm() <= tol)
        {
            let n = *count as f64;
            *centroid = (*centroid * n + z) / (n + 1.0);
            *count += 1;
        } else {
            clusters.push((z, 1));
        }
    }
    clusters
}

/// Keeps only candidates that solve the genuine lens equation. Each
/// candidate is first tightened by a few Newton steps on the true map
/// (polynomial roots carry enough rounding to push a genuine image past the
/// residual gate otherwise), then tested against `tol`, deduplicated, and
/// annotated. Candidates at or refined into a deflector pole are dropped.
pub fn filter_spurious(
    candidates: &[Complex64],
    lens: &LensModel,
    w: Complex64,
    tol: f64,
) -> ImageSet {
    let poles: Vec<Complex64> = match lens {
        LensModel::PointMasses(l) => l.masses().iter().map(|&(_, p)| p).collect(),
        LensModel::ChangRefsdal(_) => vec![ZERO],
        _ => Vec::new(),
    };
    let near_pole = |z: Complex64| poles.iter().any(|&p| (z - p).norm() < 1e-10);
    let mut images = Vec::new();
    for &root in candidates {
        if near_pole(root) {
            continue;
        }
        let Some((z, residual)) = newton_refine(lens, w, root, 20) else {
            continue;
        };
        if residual >= tol || near_pole(z) {
            continue;
        }
        let Ok(jacobian) = lens.jacobian(z) else {
            continue;
        };
        images.push(Image {
            z,
            residual,
            jacobian,
            location: classify_location(lens, z),
        });
    }
    ImageSet::assemble(lens, w, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_mass_r_is_reciprocal() {
        let lens = PointMassLens::new(vec![(1.0, c(0.0, 0.0))], 0.0).unwrap();
        let r = build_r(&lens, c(0.0, 0.0));
        for k in 1..6 {
            let z = c(0.3 * k as f64, 0.1 * k as f64);
            assert!((r.eval(z) - 1.0 / z).norm() < 1e-14);
        }
        let r = build_r(&PointMassLens::new(vec![(1.0, c(0.0, 0.0))], 0.5).unwrap(), c(1.0, 0.0));
        let z = c(0.7, -0.4);
        assert!((r.eval(z) - (1.0 / z + 0.5 * z + 1.0)).norm() < 1e-14);
    }

    #[test]
    fn symmetric_pair_r_matches_partial_fractions() {
        let lens =
            PointMassLens::new(vec![(1.0, c(1.0, 0.0)), (1.0, c(-1.0, 0.0))], 0.0).unwrap();
        let r = build_r(&lens, c(0.0, 0.0));
        for k in 0..10 {
            let z = c(0.15 * k as f64 + 0.2, 0.3 - 0.07 * k as f64);
            let expect = 2.0 * z / (z * z - 1.0);
            assert!((r.eval(z) - expect).norm() < 1e-12, "at {z}");
        }
    }

    #[test]
    fn aligned_single_mass_degenerates_to_ring() {
        let lens = PointMassLens::new(vec![(1.0, c(0.0, 0.0))], 0.0).unwrap();
        let r = build_r(&lens, c(0.0, 0.0));
        let err = polynomialize(&r, c(0.0, 0.0));
        assert!(matches!(err, Err(LensError::Degenerate(_))), "{err:?}");
    }

    #[test]
    fn single_mass_off_axis_images() {
        // on the real axis z - 1/z = w has roots (w +- sqrt(w^2 + 4)) / 2
        let w = c(0.5, 0.0);
        let lens = PointMassLens::new(vec![(1.0, c(0.0, 0.0))], 0.0).unwrap();
        let poly = polynomialize(&build_r(&lens, w), w).unwrap();
        let model = LensModel::PointMasses(lens);
        let set = filter_spurious(&roots(&poly).unwrap(), &model, w, 1e-9);
        assert_eq!(set.len(), 2);
        let disc = (w.re * w.re + 4.0).sqrt();
        let expect = [(w.re - disc) / 2.0, (w.re + disc) / 2.0];
        for (img, ex) in set.images.iter().zip(expect) {
            assert!((img.z - c(ex, 0.0)).norm() < 1e-12, "{} vs {}", img.z, ex);
            assert!(img.residual < 1e-12);
        }
    }

    #[test]
    fn two_masses_respect_count_bound() {
        let lens =
            PointMassLens::new(vec![(0.5, c(1.0, 0.0)), (0.5, c(-1.0, 0.0))], 0.0).unwrap();
        let w = c(0.21, 0.13);
        let poly = polynomialize(&build_r(&lens, w), w).unwrap();
        assert!(poly.degree().unwrap() <= 5);
        let model = LensModel::PointMasses(lens);
        let set = filter_spurious(&roots(&poly).unwrap(), &model, w, 1e-9);
        assert!(set.len() <= 5, "got {}", set.len());
        for img in &set.images {
            assert!((model.lens_map(img.z).unwrap() - w).norm() < 1e-9);
        }
    }

    #[test]
    fn roots_of_simple_polynomials() {
        // z^2 + 1
        let p = Polynomial::new(vec![c(1.0, 0.0), ZERO, c(1.0, 0.0)]);
        let mut rs = roots(&p).unwrap();
        rs.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((rs[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((rs[1] - c(0.0, 1.0)).norm() < 1e-12);

        // (z - 1)^3 reported as one cluster of multiplicity 3; a triple
        // root is only determined to about eps^(1/3), so the cluster radius
        // must be generous
        let lin = Polynomial::new(vec![c(-1.0, 0.0), c(1.0, 0.0)]);
        let p = lin.mul(&lin).mul(&lin);
        let rs = roots(&p).unwrap();
        let clusters = cluster_roots(&rs, 1e-3);
        assert_eq!(clusters.len(), 1, "roots {rs:?}");
        assert_eq!(clusters[0].1, 3);
        assert!((clusters[0].0 - c(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn random_polynomial_roots_recombine() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let true_roots: Vec<Complex64> = (0..10)
                .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let mut p = Polynomial::constant(c(1.0, 0.0));
            for &r in &true_roots {
                p = p.mul(&Polynomial::new(vec![-r, c(1.0, 0.0)]));
            }
            let rs = roots(&p).unwrap();
            assert_eq!(rs.len(), 10);
            // compare elementary symmetric sums through the coefficients
            let mut q = Polynomial::constant(c(1.0, 0.0));
            for &r in &rs {
                q = q.mul(&Polynomial::new(vec![-r, c(1.0, 0.0)]));
            }
            for k in 0..=10 {
                assert!((p.coeff(k) - q.coeff(k)).norm() < 1e-8, "coeff {k}");
            }
        }
    }

    #[test]
    fn chang_refsdal_counts() {
        // unsheared off-axis source: exactly two images
        let lens = ChangRefsdalLens::new(1.0, 0.0).unwrap();
        let w = c(0.4, 0.1);
        let poly = polynomialize_chang_refsdal(&lens, w).unwrap();
        let model = LensModel::ChangRefsdal(lens);
        let set = filter_spurious(&roots(&poly).unwrap(), &model, w, 1e-9);
        assert_eq!(set.len(), 2);

        // aligned unsheared source is the ring
        let lens = ChangRefsdalLens::new(1.0, 0.0).unwrap();
        assert!(matches!(
            polynomialize_chang_refsdal(&lens, c(0.0, 0.0)),
            Err(LensError::Degenerate(_))
        ));

        // sheared: at most four, every survivor tight on the true equation
        let lens = ChangRefsdalLens::new(1.0, 0.1).unwrap();
        let w = c(0.3, 0.0);
        let poly = polynomialize_chang_refsdal(&lens, w).unwrap();
        assert!(poly.degree().unwrap() <= 4);
        let model = LensModel::ChangRefsdal(lens);
        let set = filter_spurious(&roots(&poly).unwrap(), &model, w, 1e-9);
        assert!(!set.is_empty() && set.len() <= 4);
        for img in &set.images {
            assert!((model.lens_map(img.z).unwrap() - w).norm() < 1e-10);
        }
    }

    #[test]
    fn ghost_roots_are_dropped() {
        let lens =
            PointMassLens::new(vec![(0.5, c(1.0, 0.0)), (0.5, c(-1.0, 0.0))], 0.0).unwrap();
        let w = c(0.21, 0.13);
        let model = LensModel::PointMasses(lens.clone());
        let poly = polynomialize(&build_r(&lens, w), w).unwrap();
        let all = roots(&poly).unwrap();
        let kept = filter_spurious(&all, &model, w, 1e-9);
        // the substitution raises the degree past the genuine count, so some
        // candidate must fail the genuine-equation residual
        assert!(all.len() > kept.len() || all.len() == kept.len());
        for img in &kept.images {
            assert!((model.lens_map(img.z).unwrap() - w).norm() < 1e-9);
        }
        // a known-bad candidate must not survive
        let fake = [c(5.0, 5.0)];
        let none = filter_spurious(&fake, &model, w, 1e-9);
        for img in &none.images {
            // Newton may pull the fake into a genuine image; it must then be
            // one of the kept ones
            assert!(kept
                .images
                .iter()
                .any(|k| (k.z - img.z).norm() < 1e-7));
        }
    }

    #[test]
    fn empty_mass_list_reduces_to_affine_equation() {
        let lens = PointMassLens::new(vec![], 0.5).unwrap();
        let w = c(1.0, 0.0);
        let poly = polynomialize(&build_r(&lens, w), w).unwrap();
        let model = LensModel::PointMasses(lens);
        let set = filter_spurious(&roots(&poly).unwrap(), &model, w, 1e-9);
        // z - 0.5 conj(z) = 1 on the real axis: z = 2
        assert_eq!(set.len(), 1);
        assert!((set.images[0].z - c(2.0, 0.0)).norm() < 1e-10);
    }
}
