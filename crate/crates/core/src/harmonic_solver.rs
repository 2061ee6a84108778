//! Multistart damped-Newton solver for lens equations, plus the closed-form
//! interior image of the uniform ellipse.
//!
//! Models whose deflection is rational in z go through the polynomial
//! pipeline in `analytic_reduction`; everything else (ellipse exteriors with
//! their square-root branch, the isothermal arcsine, radial interiors) is
//! solved here as a real 2D system. Starts form a jittered lattice over the
//! search region; the jitter is drawn from a seeded generator so runs are
//! reproducible, and results are reduced deterministically (sorted, then
//! deduplicated) regardless of thread scheduling.

use crate::certification::CountCertificate;
use crate::error::{lex_cmp, LensError, Result};
use crate::lens_models::{
    schwarz_decompose, EllipseGeometry, JacobianInfo, LensModel, UniformEllipseLens,
};
use crate::{analytic_reduction, rings};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Solutions are accepted below this lens-equation residual.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Images closer than this are considered the same image.
pub const DEDUPE_RADIUS: f64 = 1e-8;
/// Default starts per axis for multistart searches.
pub const DEFAULT_GRID: usize = 64;

/// Where an image sits relative to the lens's mass support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Exterior,
    Boundary,
}

/// A single lensed image.
#[derive(Debug, Clone, Copy)]
pub struct Image {
    pub z: Complex64,
    pub residual: f64,
    pub jacobian: JacobianInfo,
    pub location: Location,
}

/// All images of one source under one lens, sorted lexicographically by
/// (re, im) and pairwise separated by at least [`DEDUPE_RADIUS`].
#[derive(Debug, Clone)]
pub struct ImageSet {
    pub images: Vec<Image>,
    pub model: String,
    pub w: Complex64,
    pub certification: Option<CountCertificate>,
}

impl ImageSet {
    /// Builds a set from raw candidates: keeps the best residual among
    /// near-duplicates, then orders deterministically.
    pub fn assemble(model: &LensModel, w: Complex64, candidates: Vec<Image>) -> Self {
        Self::assemble_named(model.name().to_string(), w, candidates)
    }

    /// [`ImageSet::assemble`] for solvers whose lens is not a [`LensModel`]
    /// (the quadrature-domain reduction carries complex weights).
    pub fn assemble_named(model: String, w: Complex64, mut candidates: Vec<Image>) -> Self {
        candidates.sort_by(|p, q| {
            p.residual
                .total_cmp(&q.residual)
                .then_with(|| lex_cmp(p.z, q.z))
        });
        let mut kept: Vec<Image> = Vec::new();
        for cand in candidates {
            if kept
                .iter()
                .all(|img| (img.z - cand.z).norm() > DEDUPE_RADIUS)
            {
                kept.push(cand);
            }
        }
        kept.sort_by(|p, q| lex_cmp(p.z, q.z));
        ImageSet {
            images: kept,
            model,
            w,
            certification: None,
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Images strictly inside the mass support.
    pub fn n_interior(&self) -> usize {
        self.images
            .iter()
            .filter(|i| i.location == Location::Interior)
            .count()
    }

    /// Images outside the support; boundary-straddlers count as exterior.
    pub fn n_exterior(&self) -> usize {
        self.images.len() - self.n_interior()
    }
}

/// Geometric shape of a multistart search.
#[derive(Debug, Clone)]
pub enum RegionKind {
    ExteriorOfEllipse {
        geometry: EllipseGeometry,
        outer_radius: f64,
    },
    InteriorOfEllipse {
        geometry: EllipseGeometry,
    },
    Annulus {
        inner_radius: f64,
        outer_radius: f64,
    },
    Disk {
        radius: f64,
    },
}

/// A seeded lattice of Newton starts over a region.
#[derive(Debug, Clone)]
pub struct SearchRegion {
    kind: RegionKind,
    grid: usize,
    seed: u64,
}

impl SearchRegion {
    pub fn new(kind: RegionKind, grid: usize) -> Result<Self> {
        if grid < 8 {
            return Err(LensError::InvalidGeometry(format!(
                "search grid must be at least 8 starts per axis, got {grid}"
            )));
        }
        match &kind {
            RegionKind::ExteriorOfEllipse {
                geometry,
                outer_radius,
            } => {
                if *outer_radius <= geometry.semi_major() {
                    return Err(LensError::InvalidGeometry(format!(
                        "exterior search radius {outer_radius} does not clear the lens (a = {})",
                        geometry.semi_major()
                    )));
                }
            }
            RegionKind::Annulus {
                inner_radius,
                outer_radius,
            } => {
                if !(0.0 <= *inner_radius && inner_radius < outer_radius) {
                    return Err(LensError::InvalidGeometry(format!(
                        "annulus radii {inner_radius}..{outer_radius} are not ordered"
                    )));
                }
            }
            RegionKind::Disk { radius } => {
                if *radius <= 0.0 {
                    return Err(LensError::InvalidGeometry(format!(
                        "disk radius must be positive, got {radius}"
                    )));
                }
            }
            RegionKind::InteriorOfEllipse { .. } => {}
        }
        Ok(SearchRegion {
            kind,
            grid,
            seed: 42,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match &self.kind {
            RegionKind::ExteriorOfEllipse {
                geometry,
                outer_radius,
            } => !geometry.is_interior(z) && z.norm() <= *outer_radius,
            RegionKind::InteriorOfEllipse { geometry } => geometry.is_interior(z),
            RegionKind::Annulus {
                inner_radius,
                outer_radius,
            } => {
                let r = z.norm();
                *inner_radius <= r && r <= *outer_radius
            }
            RegionKind::Disk { radius } => z.norm() <= *radius,
        }
    }

    fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match &self.kind {
            RegionKind::ExteriorOfEllipse { outer_radius, .. } => (
                -outer_radius,
                *outer_radius,
                -outer_radius,
                *outer_radius,
            ),
            RegionKind::InteriorOfEllipse { geometry } => (
                -geometry.semi_major(),
                geometry.semi_major(),
                -geometry.semi_minor(),
                geometry.semi_minor(),
            ),
            RegionKind::Annulus { outer_radius, .. } => (
                -outer_radius,
                *outer_radius,
                -outer_radius,
                *outer_radius,
            ),
            RegionKind::Disk { radius } => (-radius, *radius, -radius, *radius),
        }
    }

    /// The jittered start lattice, restricted to region members. Starts that
    /// land on the focal segment (or the origin for disk-type regions) are
    /// nudged off it, since the lens map is one-sided there.
    fn starts(&self) -> Vec<Complex64> {
        let (x0, x1, y0, y1) = self.bounding_box();
        let n = self.grid;
        let dx = (x1 - x0) / n as f64;
        let dy = (y1 - y0) / n as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut starts = Vec::with_capacity(n * n);
        let focal = match &self.kind {
            RegionKind::ExteriorOfEllipse { geometry, .. }
            | RegionKind::InteriorOfEllipse { geometry } => Some(geometry.focal_distance()),
            _ => None,
        };
        for iy in 0..n {
            for ix in 0..n {
                let jx: f64 = rng.gen_range(-0.3..0.3);
                let jy: f64 = rng.gen_range(-0.3..0.3);
                let x = x0 + (ix as f64 + 0.5 + jx) * dx;
                let y = y0 + (iy as f64 + 0.5 + jy) * dy;
                let mut z = Complex64::new(x, y);
                if let Some(c) = focal {
                    if z.im.abs() < 1e-6 && z.re.abs() < c {
                        z.im = 1e-6;
                    }
                } else if z.norm() < 1e-6 {
                    z = Complex64::new(1e-6, 1e-6);
                }
                if self.contains(z) {
                    starts.push(z);
                }
            }
        }
        starts
    }
}

/// Damped Newton iteration on F(z) = lens_map(z) - w from one start.
///
/// The step solves the linearized system through the Wirtinger derivatives;
/// Armijo backtracking (factor 0.5, slope 1e-4) tames the overshoot that the
/// square-root branch causes near the focal segment. Returns the converged
/// point and its residual, or None when the start is abandoned.
pub fn newton_refine(
    lens: &LensModel,
    w: Complex64,
    start: Complex64,
    max_iter: usize,
) -> Option<(Complex64, f64)> {
    let mut z = start;
    let mut f = match lens.lens_map(z) {
        Ok(v) => v - w,
        Err(_) => return None,
    };
    let mut fnorm = f.norm();
    for _ in 0..max_iter {
        if fnorm < RESIDUAL_TOL {
            return Some((z, fnorm));
        }
        let (alpha, beta) = lens.wirtinger(z).ok()?;
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if det.abs() < 1e-300 {
            return None;
        }
        let rhs = -f;
        let delta = (alpha.conj() * rhs - beta * rhs.conj()) / det;
        if !delta.re.is_finite() || !delta.im.is_finite() {
            return None;
        }
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-9 {
            let cand = z + t * delta;
            if let Ok(fc) = lens.lens_map(cand) {
                let fcn = (fc - w).norm();
                if fcn <= (1.0 - 1e-4 * t) * fnorm {
                    z = cand;
                    f = fc - w;
                    fnorm = fcn;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if fnorm < RESIDUAL_TOL {
        Some((z, fnorm))
    } else {
        None
    }
}

/// Location of z relative to the lens's mass support, with a 1e-10 band
/// counting as boundary.
pub fn classify_location(lens: &LensModel, z: Complex64) -> Location {
    match lens {
        LensModel::UniformEllipse(l) => ellipse_location(l.geometry(), z),
        LensModel::ConfocalProfile(l) => ellipse_location(l.geometry(), z),
        LensModel::IsothermalEllipse(l) => ellipse_location(l.geometry(), z),
        LensModel::Radial(l) => {
            let d = z.norm() - l.radius();
            if d.abs() <= 1e-10 {
                Location::Boundary
            } else if d < 0.0 {
                Location::Interior
            } else {
                Location::Exterior
            }
        }
        LensModel::PointMasses(_) | LensModel::ChangRefsdal(_) => Location::Exterior,
    }
}

fn ellipse_location(geometry: &EllipseGeometry, z: Complex64) -> Location {
    if geometry.is_on_boundary(z) {
        Location::Boundary
    } else if geometry.is_interior(z) {
        Location::Interior
    } else {
        Location::Exterior
    }
}

fn region_compatible(lens: &LensModel, region: &SearchRegion) -> Result<()> {
    match (&region.kind, lens) {
        (RegionKind::InteriorOfEllipse { .. }, LensModel::ConfocalProfile(_)) => {
            Err(LensError::UnsupportedRegion {
                model: "confocal_ellipse",
                detail: "interior searches are not defined for shell profiles".into(),
            })
        }
        (
            RegionKind::ExteriorOfEllipse { geometry, .. }
            | RegionKind::InteriorOfEllipse { geometry },
            LensModel::UniformEllipse(_) | LensModel::ConfocalProfile(_)
            | LensModel::IsothermalEllipse(_),
        ) => {
            let lg = match lens {
                LensModel::UniformEllipse(l) => l.geometry(),
                LensModel::ConfocalProfile(l) => l.geometry(),
                LensModel::IsothermalEllipse(l) => l.geometry(),
                _ => unreachable!(),
            };
            if (lg.semi_major() - geometry.semi_major()).abs() > 1e-12
                || (lg.semi_minor() - geometry.semi_minor()).abs() > 1e-12
            {
                return Err(LensError::UnsupportedRegion {
                    model: "search_region",
                    detail: "region geometry does not match the lens geometry".into(),
                });
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Runs the multistart search over `region` and returns every isolated
/// solution found there.
pub fn solve_region(lens: &LensModel, w: Complex64, region: &SearchRegion) -> Result<ImageSet> {
    region_compatible(lens, region)?;
    let starts = region.starts();
    let converged: Vec<Option<(Complex64, f64)>> = starts
        .par_iter()
        .map(|&z0| newton_refine(lens, w, z0, 60))
        .collect();
    let mut candidates = Vec::new();
    for hit in converged.into_iter().flatten() {
        let (z, residual) = hit;
        if !region.contains(z) {
            continue;
        }
        let jacobian = match lens.jacobian(z) {
            Ok(j) => j,
            Err(_) => continue,
        };
        candidates.push(Image {
            z,
            residual,
            jacobian,
            location: classify_location(lens, z),
        });
    }
    Ok(ImageSet::assemble(lens, w, candidates))
}

/// The at-most-one interior image of a uniform ellipse, in closed form.
///
/// Inside the ellipse the lens map is linear: (1 - d) z + (d k - g) conj(z)
/// with d the density, k = (a-b)/(a+b) and g the shear, so the candidate is
/// the solution of a 2x2 real system; it is returned only when it actually
/// lies inside the ellipse. A vanishing system determinant means a continuum
/// or an empty interior (a ring situation when w = 0), reported as
/// `DegenerateInterior`.
pub fn interior_image_uniform_ellipse(
    lens: &UniformEllipseLens,
    w: Complex64,
) -> Result<Option<Image>> {
    let s = schwarz_decompose(lens.geometry());
    let b_coef = 1.0 - lens.density();
    let a_coef = lens.density() * s.s1_coeff() - lens.shear();
    let det = b_coef * b_coef - a_coef * a_coef;
    if det.abs() < 1e-14 {
        return Err(LensError::DegenerateInterior(format!(
            "interior lens map is singular (z coefficient {b_coef}, conj coefficient {a_coef})"
        )));
    }
    let z = (b_coef * w - a_coef * w.conj()) / det;
    if !lens.geometry().is_interior(z) {
        return Ok(None);
    }
    let model = LensModel::UniformEllipse(lens.clone());
    let residual = (model.lens_map(z)? - w).norm();
    if residual >= RESIDUAL_TOL {
        return Ok(None);
    }
    let jacobian = model.jacobian(z)?;
    Ok(Some(Image {
        z,
        residual,
        jacobian,
        location: Location::Interior,
    }))
}

fn exterior_radius(support_extent: f64, w: Complex64) -> f64 {
    (4.0 * support_extent).max(w.norm() + 4.0 * support_extent)
}

fn merge(lens: &LensModel, w: Complex64, sets: Vec<Vec<Image>>) -> ImageSet {
    let mut all = Vec::new();
    for s in sets {
        all.extend(s);
    }
    ImageSet::assemble(lens, w, all)
}

/// Finds all images of source w: the polynomial pipeline for rational
/// deflections, multistart plus closed forms otherwise. Continuum
/// configurations (Einstein rings) surface as `Degenerate` errors so the
/// caller can hand them to the rings module instead of reporting points.
pub fn solve_all(lens: &LensModel, w: Complex64) -> Result<ImageSet> {
    solve_all_seeded(lens, w, DEFAULT_GRID, 42)
}

/// [`solve_all`] with an explicit starts-per-axis count for the multistart
/// stages (the polynomial stages are exhaustive and ignore it).
pub fn solve_all_with_grid(lens: &LensModel, w: Complex64, grid: usize) -> Result<ImageSet> {
    solve_all_seeded(lens, w, grid, 42)
}

/// [`solve_all`] with both the start density and the jitter seed exposed.
pub fn solve_all_seeded(
    lens: &LensModel,
    w: Complex64,
    grid: usize,
    seed: u64,
) -> Result<ImageSet> {
    match lens {
        LensModel::PointMasses(l) => {
            let r = analytic_reduction::build_r(l, w);
            let poly = analytic_reduction::polynomialize(&r, w)?;
            let roots = analytic_reduction::roots(&poly)?;
            Ok(analytic_reduction::filter_spurious(&roots, lens, w, 1e-9))
        }
        LensModel::ChangRefsdal(l) => {
            let poly = analytic_reduction::polynomialize_chang_refsdal(l, w)?;
            let roots = analytic_reduction::roots(&poly)?;
            Ok(analytic_reduction::filter_spurious(&roots, lens, w, 1e-9))
        }
        LensModel::UniformEllipse(l) => {
            if w == Complex64::new(0.0, 0.0) {
                if let Ok(ring) = rings::find_ring_uniform_ellipse(l.geometry(), l.density()) {
                    if (l.shear() - ring.shear_used).abs() < 1e-12 {
                        return Err(LensError::Degenerate(
                            "source at the ring configuration: the image set is a continuum"
                                .into(),
                        ));
                    }
                }
            }
            let region = SearchRegion::new(
                RegionKind::ExteriorOfEllipse {
                    geometry: l.geometry().clone(),
                    outer_radius: exterior_radius(l.geometry().semi_major(), w),
                },
                grid,
            )?;
            let exterior = solve_region(lens, w, &region)?;
            let mut sets = vec![exterior.images];
            match interior_image_uniform_ellipse(l, w) {
                Ok(Some(img)) => sets.push(vec![img]),
                Ok(None) => {}
                Err(LensError::DegenerateInterior(msg)) => {
                    if w == Complex64::new(0.0, 0.0) {
                        return Err(LensError::Degenerate(format!(
                            "interior continuum at w = 0: {msg}"
                        )));
                    }
                }
                Err(e) => return Err(e),
            }
            Ok(merge(lens, w, sets))
        }
        LensModel::ConfocalProfile(l) => {
            let region = SearchRegion::new(
                RegionKind::ExteriorOfEllipse {
                    geometry: l.geometry().clone(),
                    outer_radius: exterior_radius(l.geometry().semi_major(), w),
                },
                grid,
            )?;
            solve_region(lens, w, &region)
        }
        LensModel::IsothermalEllipse(l) => {
            let exterior_region = SearchRegion::new(
                RegionKind::ExteriorOfEllipse {
                    geometry: l.geometry().clone(),
                    outer_radius: exterior_radius(l.geometry().semi_major(), w),
                },
                grid,
            )?;
            let interior_region = SearchRegion::new(
                RegionKind::InteriorOfEllipse {
                    geometry: l.geometry().clone(),
                },
                grid,
            )?;
            let ext = solve_region(lens, w, &exterior_region)?;
            let int = solve_region(lens, w, &interior_region)?;
            Ok(merge(lens, w, vec![ext.images, int.images]))
        }
        LensModel::Radial(l) => {
            let zero = Complex64::new(0.0, 0.0);
            if w == zero && l.shear() == 0.0 {
                return Err(radial_ring_degeneracy(l));
            }
            // outside the disk the lens acts as one point mass carrying the
            // total mass, so the polynomial path applies there
            let surrogate = crate::lens_models::PointMassLens::new(
                vec![(l.total_mass(), zero)],
                l.shear(),
            )?;
            let exterior = {
                let r = analytic_reduction::build_r(&surrogate, w);
                let poly = analytic_reduction::polynomialize(&r, w)?;
                let roots = analytic_reduction::roots(&poly)?;
                let set = analytic_reduction::filter_spurious(&roots, lens, w, 1e-9);
                set.images
                    .into_iter()
                    .filter(|img| img.location != Location::Interior)
                    .collect::<Vec<_>>()
            };
            let interior_region = SearchRegion::new(
                RegionKind::Disk {
                    radius: l.radius() * (1.0 - 1e-9),
                },
                grid,
            )?;
            let interior = solve_region(lens, w, &interior_region)?;
            let interior = interior
                .images
                .into_iter()
                .filter(|img| img.location == Location::Interior)
                .collect::<Vec<_>>();
            Ok(merge(lens, w, vec![exterior, interior]))
        }
    }
}

/// For the aligned unsheared radial lens, decides which continuum is present.
fn radial_ring_degeneracy(l: &crate::lens_models::RadialLens) -> LensError {
    let ring_radius = l.total_mass().sqrt();
    if ring_radius >= l.radius() {
        return LensError::Degenerate(format!(
            "aligned source: exterior ring of radius {ring_radius}"
        ));
    }
    // interior continuum wherever rho^2 = cumulative mass(rho) has a root
    let mut prev_rho = l.radius() * 1e-6;
    let mut prev = prev_rho * prev_rho - l.mass_within(prev_rho).unwrap_or(0.0);
    for k in 1..=256 {
        let rho = l.radius() * k as f64 / 256.0;
        let g = rho * rho - l.mass_within(rho).unwrap_or(f64::NAN);
        if !g.is_finite() {
            break;
        }
        if prev.signum() != g.signum() {
            let mid = 0.5 * (prev_rho + rho);
            return LensError::Degenerate(format!(
                "aligned source: interior ring near radius {mid:.6}"
            ));
        }
        prev = g;
        prev_rho = rho;
    }
    LensError::Degenerate(
        "aligned unsheared source admits no isolated images (degenerate configuration)".into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens_models::{ConfocalProfile, ConfocalProfileLens, RadialLens, RadialProfile};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn uniform_ellipse(density: f64, shear: f64) -> UniformEllipseLens {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        UniformEllipseLens::new(g, density, shear).unwrap()
    }

    #[test]
    fn distant_source_has_single_nearby_image() {
        let lens = LensModel::UniformEllipse(uniform_ellipse(1.0, 0.0));
        let w = c(100.0, 0.0);
        let set = solve_all(&lens, w).unwrap();
        assert_eq!(set.len(), 1, "images: {:?}", set.images);
        assert!((set.images[0].z - w).norm() < 0.1);
        assert_eq!(set.images[0].location, Location::Exterior);
    }

    #[test]
    fn interior_image_closed_form() {
        let lens = uniform_ellipse(1.0, 0.0);
        // z coefficient vanishes at unit density, leaving conj(z)/3 = w
        let img = interior_image_uniform_ellipse(&lens, c(0.1, 0.0))
            .unwrap()
            .unwrap();
        assert!((img.z - c(0.3, 0.0)).norm() < 1e-13);
        assert!(img.residual < 1e-12);
        assert_eq!(img.location, Location::Interior);

        assert!(interior_image_uniform_ellipse(&lens, c(10.0, 0.0))
            .unwrap()
            .is_none());

        let img = interior_image_uniform_ellipse(&lens, c(0.0, 0.0))
            .unwrap()
            .unwrap();
        assert_eq!(img.z, c(0.0, 0.0));
    }

    #[test]
    fn interior_degeneracy_detected() {
        // density 1 and shear equal to the interior conj coefficient kill the
        // whole linear map
        let lens = uniform_ellipse(1.0, 1.0 / 3.0);
        let err = interior_image_uniform_ellipse(&lens, c(0.0, 0.0));
        assert!(matches!(err, Err(LensError::DegenerateInterior(_))));
    }

    #[test]
    fn interior_image_general_density() {
        let lens = uniform_ellipse(2.0, 0.2);
        let w = c(0.05, 0.02);
        let img = interior_image_uniform_ellipse(&lens, w).unwrap().unwrap();
        let model = LensModel::UniformEllipse(lens);
        assert!((model.lens_map(img.z).unwrap() - w).norm() < 1e-13);
    }

    #[test]
    fn solver_grid_is_deterministic() {
        let lens = LensModel::UniformEllipse(uniform_ellipse(2.0, 0.15));
        let w = c(0.04, 0.03);
        let a = solve_all(&lens, w).unwrap();
        let b = solve_all(&lens, w).unwrap();
        assert_eq!(a.len(), b.len());
        for (p, q) in a.images.iter().zip(b.images.iter()) {
            assert_eq!(p.z, q.z);
        }
    }

    #[test]
    fn region_mismatch_rejected() {
        let g = EllipseGeometry::new(2.0, 1.0).unwrap();
        let other = EllipseGeometry::new(3.0, 1.0).unwrap();
        let lens = LensModel::UniformEllipse(
            UniformEllipseLens::new(g, 1.0, 0.0).unwrap(),
        );
        let region = SearchRegion::new(
            RegionKind::ExteriorOfEllipse {
                geometry: other,
                outer_radius: 20.0,
            },
            16,
        )
        .unwrap();
        assert!(matches!(
            solve_region(&lens, c(1.0, 0.0), &region),
            Err(LensError::UnsupportedRegion { .. })
        ));

        let g2 = EllipseGeometry::new(2.0, 1.0).unwrap();
        let confocal = LensModel::ConfocalProfile(
            ConfocalProfileLens::new(g2.clone(), ConfocalProfile::Uniform, 0.0).unwrap(),
        );
        let interior = SearchRegion::new(RegionKind::InteriorOfEllipse { geometry: g2 }, 16)
            .unwrap();
        assert!(matches!(
            solve_region(&confocal, c(1.0, 0.0), &interior),
            Err(LensError::UnsupportedRegion { .. })
        ));
    }

    #[test]
    fn radial_aligned_source_degenerates() {
        let lens = LensModel::Radial(
            RadialLens::new(1.0, RadialProfile::Isothermal { strength: 0.05 }, 0.0).unwrap(),
        );
        // subcritical: the continuum is an interior ring
        let err = solve_all(&lens, c(0.0, 0.0));
        assert!(matches!(err, Err(LensError::Degenerate(_))), "{err:?}");

        let lens = LensModel::Radial(
            RadialLens::new(1.0, RadialProfile::Uniform { density: 2.0 }, 0.0).unwrap(),
        );
        // supercritical: exterior ring at sqrt(total mass)
        let err = solve_all(&lens, c(0.0, 0.0));
        assert!(matches!(err, Err(LensError::Degenerate(_))), "{err:?}");
    }
}
