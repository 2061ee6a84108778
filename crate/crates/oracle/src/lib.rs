//! Slow-but-simple reference numerics for cross-checking the main crate.
//!
//! Everything here is deliberately independent of the implementations under
//! test: plain composite rules instead of Gauss-Kronrod, explicit path
//! continuation instead of branch-cut bookkeeping, central differences instead
//! of closed-form derivatives. Accuracy comes from brute force, not cleverness.

use num_complex::Complex64;

/// Composite trapezoid rule on a uniform grid with `n` panels.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for k in 1..n {
        acc += f(a + k as f64 * h);
    }
    acc * h
}

/// Adaptive Simpson quadrature for complex-valued integrands on a real
/// interval. Plain recursive bisection with Richardson acceptance.
pub fn simpson_adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Complex64 {
    fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, fa: Complex64, b: f64, fb: Complex64) -> (Complex64, Complex64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
    }
    fn rec<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        fa: Complex64,
        b: f64,
        fb: Complex64,
        whole: Complex64,
        fm: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let (left, flm) = simpson(f, a, fa, m, fm);
        let (right, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, fa, m, fm, left, flm, 0.5 * tol, depth - 1)
            + rec(f, m, fm, b, fb, right, frm, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, fm) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, whole, fm, tol, max_depth)
}

/// Cauchy transform of the uniform unit-density ellipse, normalized by 1/pi:
/// (1/pi) * integral over the ellipse of dA(zeta) / (z - zeta).
///
/// Midpoint rule over the polar pullback (x, y) = (a r cos t, b r sin t),
/// area element a*b*r dr dt. Spectral in the angle, O(h^2) radially.
pub fn ellipse_cauchy_transform(a: f64, b: f64, z: Complex64, nr: usize, nt: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let dr = 1.0 / nr as f64;
    let dt = std::f64::consts::TAU / nt as f64;
    for i in 0..nr {
        let r = (i as f64 + 0.5) * dr;
        for j in 0..nt {
            let t = (j as f64 + 0.5) * dt;
            let zeta = Complex64::new(a * r * t.cos(), b * r * t.sin());
            acc += r / (z - zeta);
        }
    }
    acc * a * b * dr * dt / std::f64::consts::PI
}

/// Cauchy transform of a unit-density domain given as the image of the unit
/// disk under a conformal map `phi`, normalized by 1/pi. Uses the pullback
/// (1/pi) * integral over the disk of |phi'(t)|^2 / (z - phi(t)) dA(t),
/// with phi' obtained by central differences.
pub fn mapped_cauchy_transform<F: Fn(Complex64) -> Complex64>(
    phi: &F,
    z: Complex64,
    nr: usize,
    nt: usize,
) -> Complex64 {
    let h = 1e-6;
    let mut acc = Complex64::new(0.0, 0.0);
    let dr = 1.0 / nr as f64;
    let dt = std::f64::consts::TAU / nt as f64;
    for i in 0..nr {
        let r = (i as f64 + 0.5) * dr;
        for j in 0..nt {
            let t = (j as f64 + 0.5) * dt;
            let u = Complex64::from_polar(r, t);
            let dphi = (phi(u + Complex64::new(h, 0.0)) - phi(u - Complex64::new(h, 0.0)))
                / Complex64::new(2.0 * h, 0.0);
            acc += r * dphi.norm_sqr() / (z - phi(u));
        }
    }
    acc * dr * dt / std::f64::consts::PI
}

/// Cauchy transform (normalized by 1/pi) of an ellipse carrying a density that
/// is constant on confocal sub-ellipses: density(zeta) = mu(lambda(zeta)) with
/// lambda in (-b^2, 0] the confocal parameter.
///
/// Parametrizes the ellipse by (lambda, angle) so no inversion is needed, and
/// substitutes s = sqrt(b^2 + lambda) to absorb the coordinate singularity at
/// the focal chord. Outer loop: trapezoid in the angle; inner: adaptive
/// Simpson in s (tolerates integrable density singularities at s -> 0).
pub fn confocal_density_cauchy_transform<M: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    mu: &M,
    z: Complex64,
    nt: usize,
    tol: f64,
) -> Complex64 {
    let dt = std::f64::consts::TAU / nt as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nt {
        let t = (j as f64 + 0.5) * dt;
        let (ct, st) = (t.cos(), t.sin());
        let inner = simpson_adaptive(
            &|s: f64| {
                let lam = s * s - b * b;
                let asq = a * a + lam;
                let bsq = s * s;
                let (sa, sb) = (asq.sqrt(), bsq.sqrt());
                let zeta = Complex64::new(sa * ct, sb * st);
                // area Jacobian of (lambda, t) coords, times dlambda/ds = 2s
                let jac = 0.5 * ((sb / sa) * ct * ct + (sa / sb) * st * st) * 2.0 * s;
                mu(lam) * jac / (z - zeta)
            },
            1e-9 * b,
            b,
            tol,
            40,
        );
        acc += inner;
    }
    acc * dt / std::f64::consts::PI
}

/// sqrt(z^2 - c^2) computed by explicit analytic continuation along a straight
/// path from a far-away anchor on the positive real axis (where the principal
/// square root is unambiguous and asymptotic to z). Steps are chosen small
/// enough that consecutive values cannot jump branches.
pub fn continued_sqrt_focal(z: Complex64, c: f64) -> Complex64 {
    let anchor = Complex64::new(10.0 * (c + z.norm() + 1.0), 0.0);
    let mut prev = (anchor * anchor - c * c).sqrt(); // principal, correct at anchor
    let steps = 4000;
    for k in 1..=steps {
        let p = anchor + (z - anchor) * (k as f64 / steps as f64);
        let mut val = (p * p - c * c).sqrt();
        if (val - prev).norm() > (val + prev).norm() {
            val = -val;
        }
        prev = val;
    }
    prev
}

/// Wirtinger derivatives (d/dz, d/dzbar) of a map C -> C via central
/// differences with step `h` in each real direction.
pub fn wirtinger_fd<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z: Complex64,
    h: f64,
) -> (Complex64, Complex64) {
    let ex = Complex64::new(h, 0.0);
    let ey = Complex64::new(0.0, h);
    let fx = (f(z + ex) - f(z - ex)) / (2.0 * h);
    let fy = (f(z + ey) - f(z - ey)) / (2.0 * h);
    let i = Complex64::i();
    let alpha = 0.5 * (fx - i * fy);
    let beta = 0.5 * (fx + i * fy);
    (alpha, beta)
}

/// Expands prod_k (z - r_k) and returns ascending coefficients. Used to check
/// root sets against polynomial coefficients without trusting either side's
/// arithmetic helpers.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &ck) in coeffs.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= r * ck;
        }
        coeffs = next;
    }
    coeffs
}

/// All images of a radially symmetric lens with zero shear, found by signed
/// bracketing of the scalar profile equation. `mass(rho)` is the cumulative
/// deflection mass inside radius rho (for all rho > 0, constant past the
/// support). Solutions lie on the line through the source: rho - mass(rho)/rho
/// = +|w| on the source side, -|w| on the far side.
pub fn radial_images<M: Fn(f64) -> f64>(mass: &M, w: Complex64, rho_max: f64) -> Vec<Complex64> {
    let aw = w.norm();
    if aw == 0.0 {
        return Vec::new(); // degenerate ring configuration, not handled here
    }
    let dir = w / aw;
    let g = |rho: f64| rho - mass(rho) / rho;
    let mut out = Vec::new();
    let n = 200_000;
    let lo = 1e-9 * rho_max;
    let h = (rho_max - lo) / n as f64;
    for (target, sign) in [(aw, 1.0), (-aw, -1.0)] {
        let mut prev_rho = lo;
        let mut prev = g(prev_rho) - target;
        for k in 1..=n {
            let rho = lo + k as f64 * h;
            let cur = g(rho) - target;
            if prev == 0.0 {
                out.push(dir * sign * prev_rho);
            } else if prev * cur < 0.0 {
                // bisect
                let (mut x0, mut x1) = (prev_rho, rho);
                for _ in 0..80 {
                    let xm = 0.5 * (x0 + x1);
                    if (g(xm) - target) * (g(x0) - target) <= 0.0 {
                        x1 = xm;
                    } else {
                        x0 = xm;
                    }
                }
                out.push(dir * sign * 0.5 * (x0 + x1));
            }
            prev_rho = rho;
            prev = cur;
        }
    }
    out.sort_by(|p, q| {
        p.re.partial_cmp(&q.re)
            .unwrap()
            .then(p.im.partial_cmp(&q.im).unwrap())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_integrates_parabola() {
        let v = trapezoid(|x| x * x, 0.0, 1.0, 4000);
        assert!((v - 1.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn simpson_handles_oscillatory_complex() {
        let v = simpson_adaptive(
            &|t| Complex64::new(0.0, t).exp(),
            0.0,
            std::f64::consts::PI,
            1e-12,
            30,
        );
        // integral of e^{it} over [0, pi] is 2i
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-10);
    }

    #[test]
    fn disk_cauchy_transform_matches_point_mass() {
        // unit disk, unit density: transform at z is 1/z for |z| > 1
        let z = Complex64::new(2.0, 1.0);
        let v = ellipse_cauchy_transform(1.0, 1.0, z, 600, 600);
        assert!((v - 1.0 / z).norm() < 1e-6);
    }

    #[test]
    fn continued_sqrt_matches_principal_far_from_cut() {
        let z = Complex64::new(3.0, 2.0);
        let v = continued_sqrt_focal(z, 1.0);
        assert!((v - (z * z - 1.0).sqrt()).norm() < 1e-12);
    }

    #[test]
    fn radial_bracketing_finds_both_point_mass_images() {
        // mass(rho) = 1 for all rho: a point mass; images at (|w| +- sqrt(w^2+4))/2
        let w = Complex64::new(0.5, 0.0);
        let imgs = radial_images(&|_| 1.0, w, 8.0);
        assert_eq!(imgs.len(), 2);
        let expect_plus = (0.5 + (0.25f64 + 4.0).sqrt()) / 2.0;
        let expect_minus = -((0.25f64 + 4.0).sqrt() - 0.5) / 2.0;
        assert!((imgs[1].re - expect_plus).abs() < 1e-9);
        assert!((imgs[0].re - expect_minus).abs() < 1e-9);
    }
}
