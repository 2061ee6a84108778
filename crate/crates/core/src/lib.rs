//! Image finding and certification for thin gravitational lenses.
//!
//! The crate takes a lens model (point masses, elliptical or radial extended
//! densities, each with optional external shear) and a source position, finds
//! every lensed image, classifies image parities and magnifications, and then
//! certifies the image count with an independent argument-principle count so
//! that a missed or spurious image is detected rather than silently reported.
//! Degenerate sources that produce continuum images (Einstein rings) are
//! detected, constructed in closed form where one exists, and verified.

pub mod analytic_reduction;
pub mod certification;
pub mod error;
pub mod harmonic_solver;
pub mod lens_models;
pub mod quad;
pub mod quadrature_domains;
pub mod rings;

pub use error::{LensError, Result};
pub use lens_models::LensModel;
