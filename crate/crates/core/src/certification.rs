//! A posteriori certification of image counts.
//!
//! The lens map F(z) = z - conj(deflection(z)) - shear * conj(z) - w is
//! harmonic off the mass support, so the argument principle applies in the
//! form: (sense-preserving images) - (sense-reversing images) inside a region
//! equals the winding of F over the region's boundary. We evaluate the
//! windings numerically on circles and confocal ellipses and compare against
//! the solver's counts. A certificate that fails this identity means images
//! were missed (or hallucinated), independent of how the solve was done.
//!
//! Strategy by model:
//! - point masses, Chang-Refsdal: one large circle, minus a small circle
//!   around each deflector pole;
//! - uniform ellipse and radial lenses with bounded density: one large
//!   circle only, since the map is continuous across the support;
//! - shell-profile ellipses (deflection only defined outside): an annulus
//!   between a large circle and a confocal ellipse hugging the boundary;
//! - radial lenses with a density singularity at the origin: one large
//!   circle minus a small circle around the origin.

use crate::error::{LensError, Result};
use crate::harmonic_solver::{solve_all, solve_all_with_grid, ImageSet, Location, DEFAULT_GRID};
use crate::lens_models::{EllipseGeometry, LensModel, Parity, RadialLens, RadialProfile};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

/// Winding of a map over one closed contour.
#[derive(Debug, Clone)]
pub struct WindingReport {
    /// Human-readable description of the contour.
    pub contour: String,
    /// Rounded winding number.
    pub winding: i64,
    /// Accumulated phase change divided by 2 pi, before rounding.
    pub raw: f64,
    /// Samples used on the final refinement pass.
    pub samples: usize,
}

/// One recorded count bound: `observed <= bound` unless the name says
/// otherwise (parity-style checks store the expected value in `bound`).
#[derive(Debug, Clone)]
pub struct BoundCheck {
    pub name: String,
    pub bound: usize,
    pub observed: usize,
    pub ok: bool,
}

/// Result of certifying an image set against the argument principle.
///
/// `n_plus` and `n_minus` count sense-preserving and sense-reversing images
/// inside the certified region (for annulus strategies that is the exterior
/// of the lens; interior images are outside the contours and not counted
/// here). The identity checked is
/// `n_plus - n_minus == winding_at_infinity + pole_contributions`,
/// where `pole_contributions` is minus the sum of the windings over the
/// excluded inner contours.
#[derive(Debug, Clone)]
pub struct CountCertificate {
    pub n_plus: usize,
    pub n_minus: usize,
    pub winding_at_infinity: WindingReport,
    pub pole_contributions: i64,
    pub identity_ok: bool,
    pub bound_checks: Vec<BoundCheck>,
}

/// Computes the winding number of `f` along `contour` (parametrized over
/// [0, 1)) by accumulating phase increments. Sampling starts at
/// `min_samples` (at least 512) and doubles until every increment is below
/// pi/2, which makes the unwrapped total unambiguous. Contours passing
/// within 1e-8 of a zero are rejected so a grazing feature cannot silently
/// corrupt the count.
pub fn winding_number<F, C>(
    f: F,
    contour: C,
    min_samples: usize,
    label: &str,
) -> Result<WindingReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
    C: Fn(f64) -> Complex64,
{
    let mut n = min_samples.max(512);
    loop {
        let mut vals = Vec::with_capacity(n);
        let mut min_abs = f64::INFINITY;
        let mut mean_radius = 0.0;
        for k in 0..n {
            let t = k as f64 / n as f64;
            let z = contour(t);
            mean_radius += z.norm();
            let v = f(z)?;
            let a = v.norm();
            if !a.is_finite() {
                return Err(LensError::numerical(
                    "winding_number",
                    format!("map value is not finite at contour point {z}"),
                ));
            }
            min_abs = min_abs.min(a);
            vals.push(v);
        }
        mean_radius /= n as f64;
        if min_abs <= 1e-8 {
            return Err(LensError::ContourTouchesFeature {
                radius: mean_radius,
                min_abs,
                suggested: mean_radius * 1.05,
            });
        }
        let mut total = 0.0;
        let mut coarse = false;
        for k in 0..n {
            let inc = (vals[(k + 1) % n] / vals[k]).arg();
            if inc.abs() >= FRAC_PI_2 {
                coarse = true;
                break;
            }
            total += inc;
        }
        if !coarse {
            let raw = total / (2.0 * PI);
            let winding = raw.round() as i64;
            if (raw - winding as f64).abs() > 1e-6 {
                return Err(LensError::numerical(
                    "winding_number",
                    format!("accumulated phase {raw} is not close to an integer"),
                ));
            }
            return Ok(WindingReport {
                contour: label.to_string(),
                winding,
                raw,
                samples: n,
            });
        }
        if n >= (1 << 17) {
            return Err(LensError::numerical(
                "winding_number",
                "phase increments stay above pi/2 at the sampling cap",
            ));
        }
        n *= 2;
    }
}

fn circle(center: Complex64, radius: f64) -> impl Fn(f64) -> Complex64 {
    move |t| center + radius * Complex64::new(0.0, 2.0 * PI * t).exp()
}

fn confocal_contour(geometry: &EllipseGeometry, shell_offset: f64) -> impl Fn(f64) -> Complex64 {
    let ca = (geometry.semi_major().powi(2) + shell_offset).sqrt();
    let cb = (geometry.semi_minor().powi(2) + shell_offset).sqrt();
    move |t| {
        let phase = 2.0 * PI * t;
        Complex64::new(ca * phase.cos(), cb * phase.sin())
    }
}

fn residual_map(lens: &LensModel, w: Complex64) -> impl Fn(Complex64) -> Result<Complex64> + '_ {
    move |z| Ok(lens.lens_map(z)? - w)
}

fn support_extent(lens: &LensModel) -> f64 {
    match lens {
        LensModel::PointMasses(l) => l
            .masses()
            .iter()
            .map(|&(_, p)| p.norm())
            .fold(0.0, f64::max),
        LensModel::ChangRefsdal(_) => 0.0,
        LensModel::UniformEllipse(l) => l.geometry().semi_major(),
        LensModel::ConfocalProfile(l) => l.geometry().semi_major(),
        LensModel::IsothermalEllipse(l) => l.geometry().semi_major(),
        LensModel::Radial(l) => l.radius(),
    }
}

fn outer_radius(lens: &LensModel, set: &ImageSet) -> f64 {
    let image_extent = set
        .images
        .iter()
        .map(|i| i.z.norm())
        .fold(0.0, f64::max);
    2.0 * (image_extent.max(support_extent(lens)) + set.w.norm() + 1.0)
}

fn parity_counts(images: &[(Complex64, Parity)]) -> (usize, usize) {
    let plus = images
        .iter()
        .filter(|(_, p)| *p == Parity::SensePreserving)
        .count();
    (plus, images.len() - plus)
}

/// True when the cumulative mass vanishes fast enough at the origin for the
/// deflection to extend continuously there.
fn radial_origin_regular(l: &RadialLens) -> bool {
    match l.profile() {
        RadialProfile::Uniform { .. } => true,
        RadialProfile::Isothermal { .. } => false,
        RadialProfile::Custom(_) => {
            let r = l.radius();
            let probe = 1e-6 * r;
            let near = match l.mass_within(probe) {
                Ok(m) => m / probe,
                Err(_) => return false,
            };
            let far = match l.mass_within(r) {
                Ok(m) => m / r,
                Err(_) => return false,
            };
            near.is_finite() && near <= 1e-3 * far.max(1.0)
        }
    }
}

fn bound_checks_for(lens: &LensModel, set: &ImageSet) -> Vec<BoundCheck> {
    let total = set.len();
    let n_ext = set.n_exterior();
    let shear = lens.shear();
    let mut checks = Vec::new();
    let mut push = |name: &str, bound: usize, observed: usize, upper: bool| {
        let ok = if upper {
            observed <= bound
        } else {
            observed == bound
        };
        checks.push(BoundCheck {
            name: name.to_string(),
            bound,
            observed,
            ok,
        });
    };
    match lens {
        LensModel::PointMasses(l) => {
            let n = l.masses().len();
            if shear == 0.0 {
                if n >= 2 {
                    push("five_n_minus_five", 5 * n - 5, total, true);
                }
                push("polynomial_degree", n * n + 1, total, true);
            } else {
                push("polynomial_degree_sheared", (n + 1) * (n + 1) + 1, total, true);
            }
        }
        LensModel::ChangRefsdal(_) => {
            push("chang_refsdal_max", 4, total, true);
        }
        LensModel::UniformEllipse(_) => {
            push("exterior_max", 4, n_ext, true);
            push("total_max", 5, total, true);
            if shear == 0.0 {
                push("odd_image_count", 1, total % 2, false);
            }
        }
        LensModel::ConfocalProfile(_) | LensModel::IsothermalEllipse(_) => {
            push("exterior_max", 4, n_ext, true);
        }
        LensModel::Radial(l) => {
            if radial_origin_regular(l) {
                if shear == 0.0 {
                    push("odd_image_count", 1, total % 2, false);
                }
            } else if matches!(l.profile(), RadialProfile::Isothermal { .. }) {
                push("isothermal_total_max", 5, total, true);
                push("interior_max", 2, set.n_interior(), true);
            }
        }
    }
    checks
}

fn assemble_certificate(
    lens: &LensModel,
    set: &ImageSet,
    counted: Vec<(Complex64, Parity)>,
    at_infinity: WindingReport,
    inner_windings: i64,
) -> CountCertificate {
    let (n_plus, n_minus) = parity_counts(&counted);
    let pole_contributions = -inner_windings;
    let identity_ok =
        n_plus as i64 - n_minus as i64 == at_infinity.winding + pole_contributions;
    CountCertificate {
        n_plus,
        n_minus,
        winding_at_infinity: at_infinity,
        pole_contributions,
        identity_ok,
        bound_checks: bound_checks_for(lens, set),
    }
}

fn pole_circle_radius(pole: Complex64, poles: &[Complex64], set: &ImageSet) -> f64 {
    let mut clearance = f64::INFINITY;
    for &other in poles {
        if other != pole {
            clearance = clearance.min((other - pole).norm());
        }
    }
    for img in &set.images {
        clearance = clearance.min((img.z - pole).norm());
    }
    if clearance.is_finite() {
        0.5 * clearance
    } else {
        0.5
    }
}

fn certify_with_poles(
    lens: &LensModel,
    set: &ImageSet,
    poles: Vec<Complex64>,
) -> Result<CountCertificate> {
    let f = residual_map(lens, set.w);
    let big = outer_radius(lens, set);
    let at_infinity = winding_number(
        &f,
        circle(Complex64::new(0.0, 0.0), big),
        512,
        &format!("circle |z| = {big:.6}"),
    )?;
    let mut inner_total = 0;
    for &pole in &poles {
        let r = pole_circle_radius(pole, &poles, set);
        let report = winding_number(
            &f,
            circle(pole, r),
            512,
            &format!("circle of radius {r:.3e} around {pole}"),
        )?;
        inner_total += report.winding;
    }
    let counted = set.images.iter().map(|i| (i.z, i.jacobian.parity)).collect();
    Ok(assemble_certificate(lens, set, counted, at_infinity, inner_total))
}

fn certify_full_plane(lens: &LensModel, set: &ImageSet) -> Result<CountCertificate> {
    let f = residual_map(lens, set.w);
    let big = outer_radius(lens, set);
    let at_infinity = winding_number(
        &f,
        circle(Complex64::new(0.0, 0.0), big),
        512,
        &format!("circle |z| = {big:.6}"),
    )?;
    let counted = set.images.iter().map(|i| (i.z, i.jacobian.parity)).collect();
    Ok(assemble_certificate(lens, set, counted, at_infinity, 0))
}

/// Shell offset of the confocal ellipse through z (the positive root of the
/// confocal quadratic), used to slip an inner contour between the lens
/// boundary and the closest exterior image.
fn confocal_offset(geometry: &EllipseGeometry, z: Complex64) -> f64 {
    let (a2, b2) = (
        geometry.semi_major().powi(2),
        geometry.semi_minor().powi(2),
    );
    let (x2, y2) = (z.re * z.re, z.im * z.im);
    let p = a2 + b2 - x2 - y2;
    let q = a2 * b2 - x2 * b2 - y2 * a2;
    let disc = (p * p - 4.0 * q).max(0.0).sqrt();
    (-p + disc) / 2.0
}

fn certify_exterior_annulus(
    lens: &LensModel,
    set: &ImageSet,
    geometry: &EllipseGeometry,
) -> Result<CountCertificate> {
    let f = residual_map(lens, set.w);
    let big = outer_radius(lens, set);
    let at_infinity = winding_number(
        &f,
        circle(Complex64::new(0.0, 0.0), big),
        512,
        &format!("circle |z| = {big:.6}"),
    )?;
    let b2 = geometry.semi_minor().powi(2);
    let mut delta = 1e-6 * b2;
    for img in &set.images {
        if img.location != Location::Interior {
            let lam = confocal_offset(geometry, img.z);
            if lam > 0.0 {
                delta = delta.min(0.5 * lam);
            }
        }
    }
    delta = delta.max(1e-12 * b2);
    let inner = winding_number(
        &f,
        confocal_contour(geometry, delta),
        512,
        &format!("confocal ellipse at shell offset {delta:.3e}"),
    )?;
    let counted = set
        .images
        .iter()
        .filter(|i| i.location != Location::Interior)
        .map(|i| (i.z, i.jacobian.parity))
        .collect();
    Ok(assemble_certificate(lens, set, counted, at_infinity, inner.winding))
}

fn certify_origin_excluded(lens: &LensModel, set: &ImageSet) -> Result<CountCertificate> {
    let f = residual_map(lens, set.w);
    let big = outer_radius(lens, set);
    let at_infinity = winding_number(
        &f,
        circle(Complex64::new(0.0, 0.0), big),
        512,
        &format!("circle |z| = {big:.6}"),
    )?;
    let mut eps = 0.1 * support_extent(lens).max(1e-6);
    for img in &set.images {
        let d = img.z.norm();
        if d > 0.0 {
            eps = eps.min(0.5 * d);
        }
    }
    let inner = winding_number(
        &f,
        circle(Complex64::new(0.0, 0.0), eps),
        512,
        &format!("circle of radius {eps:.3e} around the origin"),
    )?;
    let counted = set.images.iter().map(|i| (i.z, i.jacobian.parity)).collect();
    Ok(assemble_certificate(lens, set, counted, at_infinity, inner.winding))
}

/// Certifies an already-computed image set. The winding identity relates
/// signed image counts to boundary data alone, so this is an independent
/// check on whatever produced the set.
pub fn certify(lens: &LensModel, set: &ImageSet) -> Result<CountCertificate> {
    if lens.shear().abs() >= 1.0 {
        return Err(LensError::numerical(
            "certify",
            "shear magnitude at or above 1 changes the winding at infinity",
        ));
    }
    match lens {
        LensModel::PointMasses(l) => {
            let poles: Vec<Complex64> = l.masses().iter().map(|&(_, p)| p).collect();
            certify_with_poles(lens, set, poles)
        }
        LensModel::ChangRefsdal(_) => {
            certify_with_poles(lens, set, vec![Complex64::new(0.0, 0.0)])
        }
        LensModel::UniformEllipse(_) => certify_full_plane(lens, set),
        LensModel::ConfocalProfile(l) => {
            let g = l.geometry().clone();
            certify_exterior_annulus(lens, set, &g)
        }
        LensModel::IsothermalEllipse(l) => {
            let g = l.geometry().clone();
            certify_exterior_annulus(lens, set, &g)
        }
        LensModel::Radial(l) => {
            if radial_origin_regular(l) {
                certify_full_plane(lens, set)
            } else {
                certify_origin_excluded(lens, set)
            }
        }
    }
}

/// Solves and certifies in one step. On an identity failure the solve is
/// retried once with four times as many starts (missed images are by far the
/// most common cause); the certificate of the retry is reported either way.
pub fn solve_certified(lens: &LensModel, w: Complex64) -> Result<ImageSet> {
    let mut set = solve_all(lens, w)?;
    let mut cert = certify(lens, &set)?;
    if !cert.identity_ok {
        let retry = solve_all_with_grid(lens, w, 2 * DEFAULT_GRID)?;
        cert = certify(lens, &retry)?;
        set = retry;
    }
    set.certification = Some(cert);
    Ok(set)
}

/// Critical curves (zero set of the Jacobian determinant) and their
/// source-plane images, traced with marching squares on a symmetric window.
#[derive(Debug, Clone)]
pub struct CriticalCurveSet {
    /// Image-plane polylines. Closed loops repeat their first vertex.
    pub curves: Vec<Vec<Complex64>>,
    /// The same polylines pushed through the lens map.
    pub caustics: Vec<Vec<Complex64>>,
    pub window: f64,
    pub resolution: usize,
}

pub fn critical_curves(
    lens: &LensModel,
    window: f64,
    resolution: usize,
) -> Result<CriticalCurveSet> {
    if !(window > 0.0) || resolution < 16 {
        return Err(LensError::InvalidGeometry(format!(
            "critical-curve window {window} / resolution {resolution} out of range"
        )));
    }
    let n = resolution;
    let coord = |i: usize| -window + 2.0 * window * i as f64 / n as f64;
    // Jacobian determinant on the lattice; NaN marks points the model cannot
    // evaluate, and any cell touching one is skipped.
    let dets: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|j| {
            (0..=n)
                .map(|i| {
                    let z = Complex64::new(coord(i), coord(j));
                    lens.jacobian(z).map(|jc| jc.det).unwrap_or(f64::NAN)
                })
                .collect()
        })
        .collect();
    let crossing = |p: Complex64, fp: f64, q: Complex64, fq: f64| -> Option<Complex64> {
        if fp.is_nan() || fq.is_nan() || (fp >= 0.0) == (fq >= 0.0) {
            return None;
        }
        let t = fp / (fp - fq);
        Some(p + t * (q - p))
    };
    // crossings are computed once per lattice edge so adjacent cells share
    // bitwise-identical endpoints and segment chaining can match exactly
    let mut hcross = vec![vec![None; n]; n + 1];
    let mut vcross = vec![vec![None; n + 1]; n];
    for j in 0..=n {
        for i in 0..n {
            let p = Complex64::new(coord(i), coord(j));
            let q = Complex64::new(coord(i + 1), coord(j));
            hcross[j][i] = crossing(p, dets[j][i], q, dets[j][i + 1]);
        }
    }
    for j in 0..n {
        for i in 0..=n {
            let p = Complex64::new(coord(i), coord(j));
            let q = Complex64::new(coord(i), coord(j + 1));
            vcross[j][i] = crossing(p, dets[j][i], q, dets[j + 1][i]);
        }
    }
    let mut segments: Vec<(Complex64, Complex64)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [dets[j][i], dets[j][i + 1], dets[j + 1][i + 1], dets[j + 1][i]];
            if corners.iter().any(|v| v.is_nan()) {
                continue;
            }
            let mut hits: Vec<Complex64> = Vec::with_capacity(4);
            let edge_pts = [hcross[j][i], vcross[j][i + 1], hcross[j + 1][i], vcross[j][i]];
            for p in edge_pts.iter().flatten() {
                hits.push(*p);
            }
            match hits.len() {
                2 => segments.push((hits[0], hits[1])),
                4 => {
                    // saddle cell: the center sample decides which pairs of
                    // edge crossings belong to the same branch
                    let zc = Complex64::new(
                        0.5 * (coord(i) + coord(i + 1)),
                        0.5 * (coord(j) + coord(j + 1)),
                    );
                    let fc = lens.jacobian(zc).map(|jc| jc.det).unwrap_or(f64::NAN);
                    let (b, r, t, l) = (
                        hcross[j][i].unwrap(),
                        vcross[j][i + 1].unwrap(),
                        hcross[j + 1][i].unwrap(),
                        vcross[j][i].unwrap(),
                    );
                    if fc.is_nan() {
                        continue;
                    }
                    if (fc >= 0.0) == (corners[0] >= 0.0) {
                        segments.push((b, r));
                        segments.push((t, l));
                    } else {
                        segments.push((b, l));
                        segments.push((t, r));
                    }
                }
                _ => {}
            }
        }
    }
    let curves = chain_segments(segments);
    let mut caustics = Vec::with_capacity(curves.len());
    for curve in &curves {
        let mut image = Vec::with_capacity(curve.len());
        for &z in curve {
            match lens.lens_map(z) {
                Ok(wz) => image.push(wz),
                Err(_) => {}
            }
        }
        caustics.push(image);
    }
    Ok(CriticalCurveSet {
        curves,
        caustics,
        window,
        resolution,
    })
}

fn key_of(z: Complex64) -> (u64, u64) {
    (z.re.to_bits(), z.im.to_bits())
}

/// Joins exact-endpoint-matching segments into polylines.
fn chain_segments(segments: Vec<(Complex64, Complex64)>) -> Vec<Vec<Complex64>> {
    use std::collections::HashMap;
    let mut by_endpoint: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
    for (idx, (p, q)) in segments.iter().enumerate() {
        by_endpoint.entry(key_of(*p)).or_default().push(idx);
        by_endpoint.entry(key_of(*q)).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut curves = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (p, q) = segments[start];
        let mut chain = vec![p, q];
        // extend forward from the tail, then backward from the head
        for _pass in 0..2 {
            loop {
                let tail = *chain.last().unwrap();
                let mut extended = false;
                if let Some(cands) = by_endpoint.get(&key_of(tail)) {
                    for &idx in cands {
                        if used[idx] {
                            continue;
                        }
                        let (a, b) = segments[idx];
                        let next = if key_of(a) == key_of(tail) {
                            b
                        } else {
                            a
                        };
                        used[idx] = true;
                        chain.push(next);
                        extended = true;
                        break;
                    }
                }
                if !extended {
                    break;
                }
            }
            chain.reverse();
        }
        curves.push(chain);
    }
    curves
}

/// Image-count survey over a rectangle of source positions.
#[derive(Debug, Clone)]
pub struct SurveyMap {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    /// counts[j][i] is the image count at the (i, j) cell center.
    pub counts: Vec<Vec<usize>>,
    /// Cells where the count is unreliable: a near-critical image
    /// (|det J| < 1e-6), a degenerate configuration, or a failed solve.
    pub masked: Vec<Vec<bool>>,
}

impl SurveyMap {
    pub fn cell_center(&self, i: usize, j: usize) -> Complex64 {
        let dx = (self.x_range.1 - self.x_range.0) / self.nx as f64;
        let dy = (self.y_range.1 - self.y_range.0) / self.ny as f64;
        Complex64::new(
            self.x_range.0 + (i as f64 + 0.5) * dx,
            self.y_range.0 + (j as f64 + 0.5) * dy,
        )
    }
}

/// Counts images on an nx-by-ny grid of sources. Cells whose count cannot
/// jump cleanly (a caustic crossing in progress) are masked rather than
/// reported; between unmasked neighbours the count changes by 0 or 2.
pub fn survey(
    lens: &LensModel,
    x_range: (f64, f64),
    y_range: (f64, f64),
    nx: usize,
    ny: usize,
    grid: usize,
) -> Result<SurveyMap> {
    if nx == 0 || ny == 0 || !(x_range.0 < x_range.1) || !(y_range.0 < y_range.1) {
        return Err(LensError::InvalidGeometry(
            "survey needs a nonempty grid over a nonempty rectangle".into(),
        ));
    }
    let mut map = SurveyMap {
        x_range,
        y_range,
        nx,
        ny,
        counts: Vec::new(),
        masked: Vec::new(),
    };
    let rows: Vec<(Vec<usize>, Vec<bool>)> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let mut counts = Vec::with_capacity(nx);
            let mut masked = Vec::with_capacity(nx);
            for i in 0..nx {
                let w = map.cell_center(i, j);
                match solve_all_with_grid(lens, w, grid) {
                    Ok(set) => {
                        let near_critical = set
                            .images
                            .iter()
                            .any(|img| img.jacobian.det.abs() < 1e-6);
                        counts.push(set.len());
                        masked.push(near_critical);
                    }
                    Err(_) => {
                        counts.push(0);
                        masked.push(true);
                    }
                }
            }
            (counts, masked)
        })
        .collect();
    for (c, m) in rows {
        map.counts.push(c);
        map.masked.push(m);
    }
    Ok(map)
}
