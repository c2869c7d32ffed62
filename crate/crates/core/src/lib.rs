//! Complex geodesics and their left inverses in classical domains.
//!
//! A complex geodesic is a holomorphic map `f: D -> Omega` from the unit disc
//! that realizes the Lempert function between two of its points; a left
//! inverse is a holomorphic `F: Omega -> D` with `F(f(lambda)) = lambda`.
//! This crate constructs both for the disc, bidisc, Euclidean ball,
//! symmetrized bidisc, tetrablock and the 2x2 symmetric matrix ball, decides
//! whether the left inverse is unique, and verifies every construction with
//! sampling oracles.
//!
//! Layout:
//! - [`complex`]: scalars, Moebius maps, Blaschke factors, quadratics
//! - [`mat2`]: 2x2 complex matrix helpers (operator norm, psd sqrt)
//! - [`selfmap`]: closed grammar of holomorphic self-maps of the disc
//! - [`domains`]: membership predicates, coverings, embeddings, samplers
//! - [`geodesics`]: geodesic spec types and evaluators
//! - [`leftinv`]: left-inverse families
//! - [`classify`]: uniqueness classification with verified witnesses
//! - [`oracle`]: sampling verification and metric cross-checks

pub mod classify;
pub mod complex;
pub mod domains;
pub mod error;
pub mod geodesics;
pub mod leftinv;
pub mod mat2;
pub mod oracle;
pub mod selfmap;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Tolerances used across the crate. Each is a fixed module constant;
/// operations that the CLI exposes with an override accept an explicit
/// argument instead of mutating these.
pub mod tol {
    /// Slack for unimodularity and unit-norm constraints on spec fields.
    pub const UNIMODULAR: f64 = 1e-12;
    /// Identity residual bound `|F(f(lambda)) - lambda|` on analytic grids.
    pub const IDENTITY: f64 = 1e-9;
    /// sup-difference threshold above which two maps count as distinct.
    pub const DISTINCT: f64 = 1e-3;
    /// Double-root threshold for quadratics: the discriminant is compared
    /// against this times the squared coefficient scale. A coalescing pair
    /// splits its computed roots by the square root of the rounding error,
    /// so the decision is made on the discriminant, not on root distance.
    pub const DOUBLE_ROOT: f64 = 1e-12;
    /// Hermiticity and PSD slack for 2x2 matrix checks.
    pub const MATRIX: f64 = 1e-10;
    /// Distance to the equality manifold below which a spec counts as on it.
    pub const EQUALITY_MANIFOLD: f64 = 1e-9;
    /// Endpoint agreement required by the convex uniqueness certificate.
    pub const ENDPOINT: f64 = 1e-10;
    /// Scale factor for the rank threshold in the convex certificate.
    pub const RANK: f64 = 1e-8;
    /// Arc-length refinement target when scanning admissible omega.
    pub const OMEGA_REFINE: f64 = 1e-6;
    /// Slack allowed on the Schwarz-Pick inequality check.
    pub const SCHWARZ_PICK: f64 = 1e-12;
}
