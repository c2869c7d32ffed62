//! Explicit left-inverse families.
//!
//! Every family of solutions to the extremal two-point interpolation problem
//! that this crate can construct lives here: the `Psi` family on the
//! symmetrized bidisc, the `Phi` and root-based `PhiTilde` families on the
//! tetrablock, the square-root family on the Euclidean ball, model Reinhardt
//! inverses, the retract parametrization on the bidisc, the parabolic
//! closed form on the symmetrized bidisc, and the matrix-ball construction
//! `G_h`/`F_h` that transports a left inverse of a matrix disc through the
//! covering of the tetrablock.
//!
//! A [`LeftInverseSpec`] is a serializable description of one member of one
//! family.  `eval` turns it into a scalar value at a sampled domain point;
//! the verification oracle replays it against a geodesic.

use serde::{Deserialize, Serialize};

use crate::complex::{
    cr, ensure_finite, ensure_finite_real, ensure_unimodular, quad_root_in_disc, MoebiusFrac,
    MoebiusSpec, ONE, ZERO,
};
use crate::domains::{KExp, PointE, PointG2, SamplePoint};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::selfmap::SelfMapSpec;
use crate::tol;
use crate::Complex64;

fn default_scale() -> Complex64 {
    ONE
}

/// Bounded-by-one free parameter of the retract family: either a constant
/// from the closed disc or a separable product `f(z1) g(z2)` of two disc
/// self-maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RetractH {
    Constant {
        #[serde(with = "crate::complex::creim")]
        value: Complex64,
    },
    Separable { f: SelfMapSpec, g: SelfMapSpec },
}

impl RetractH {
    pub fn validate(&self) -> Result<()> {
        match self {
            RetractH::Constant { value } => {
                ensure_finite(*value, "retract parameter h")?;
                if value.norm() > 1.0 + tol::UNIMODULAR {
                    return Err(Error::InvalidSpec(format!(
                        "retract parameter h must lie in the closed unit disc, got |h| = {}",
                        value.norm()
                    )));
                }
                Ok(())
            }
            RetractH::Separable { f, g } => {
                f.validate()?;
                g.validate()
            }
        }
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        match self {
            RetractH::Constant { value } => *value,
            RetractH::Separable { f, g } => f.eval(z1) * g.eval(z2),
        }
    }
}

/// Scalar map on the symmetric 2x2 matrix ball: apply the listed
/// automorphisms in order, then read the top-left entry.  An empty list is
/// the bare top-left projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RIIMapSpec {
    pub automorphisms: Vec<Mat2>,
}

impl RIIMapSpec {
    pub fn top_left() -> Self {
        RIIMapSpec { automorphisms: Vec::new() }
    }

    /// The chain used by the matrix-ball left inverse: one automorphism
    /// step centered at the antidiagonal matrix with entries `-beta`,
    /// followed by the top-left projection.  On the diagonal matrix
    /// `diag(lambda, 0)` it evaluates to `(1 - beta^2) lambda`, and on the
    /// matrix `[[(1-beta^2) lambda, -beta], [-beta, 0]]` it recovers
    /// `lambda` exactly.
    pub fn canonical(beta: f64) -> Result<Self> {
        ensure_finite_real(beta, "beta")?;
        if !(0.0 < beta && beta < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "beta must lie in (0, 1), got {beta}"
            )));
        }
        Ok(RIIMapSpec {
            automorphisms: vec![Mat2::symmetric(ZERO, cr(-beta), ZERO)],
        })
    }

    pub fn validate(&self) -> Result<()> {
        for a in &self.automorphisms {
            a.validate_finite()?;
            if !a.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            if a.operator_norm() >= 1.0 {
                return Err(Error::InvalidSpec(
                    "automorphism center must have operator norm < 1".into(),
                ));
            }
        }
        Ok(())
    }
}

/// One member of one left-inverse family, in a form that can round-trip
/// through JSON.  `scale` multiplies the final value and `post` applies a
/// linear-fractional map before scaling; both default to the identity and
/// are emitted by the classifier when the exact left inverse of a geodesic
/// differs from the raw family member by an automorphism of the disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LeftInverseSpec {
    /// `scale * post((2p - omega s) / (2 - conj(omega) s))` on the
    /// symmetrized bidisc.
    PsiOmega {
        #[serde(with = "crate::complex::creim")]
        omega: Complex64,
        #[serde(default = "default_scale", with = "crate::complex::creim")]
        scale: Complex64,
        #[serde(default)]
        post: Option<MoebiusFrac>,
    },
    /// `scale * post((omega x3 - x1) / (omega x2 - 1))` on the tetrablock,
    /// with the coordinate swap applied first when `swapped` is set.
    PhiOmega {
        #[serde(with = "crate::complex::creim")]
        omega: Complex64,
        #[serde(default)]
        swapped: bool,
        #[serde(default = "default_scale", with = "crate::complex::creim")]
        scale: Complex64,
        #[serde(default)]
        post: Option<MoebiusFrac>,
    },
    /// The unique in-disc solution of `Phi_omega(x1, t x2, t x3) = t`,
    /// applied after an optional swap and an optional unimodular twist
    /// `(x1, x2, x3) -> (conj(u) x1, u x2, x3)`.
    PhiTilde {
        #[serde(with = "crate::complex::creim")]
        omega: Complex64,
        #[serde(default)]
        swapped: bool,
        #[serde(default, with = "crate::complex::creim_opt")]
        twist: Option<Complex64>,
    },
    /// Scaled coordinate projection on the tetrablock.
    EProj {
        coord: u8,
        #[serde(default = "default_scale", with = "crate::complex::creim")]
        scale: Complex64,
    },
    /// `z1 / sqrt(1 + gamma z2^2)` on the Euclidean ball.
    BallGamma {
        #[serde(with = "crate::complex::creim")]
        gamma: Complex64,
    },
    /// `z1 / sqrt(1 - A zj^2)` on the model domain `|z1| + A |z'|^2 < 1`.
    ModelGAj { a: f64, j: usize },
    /// `z / (1 - beta w^k)` on the Reinhardt model `|z| + b |w|^k < 1`.
    /// The exponent `inf` degenerates to the bidisc and forces `beta = 0`.
    ReinhardtBeta { beta: f64, k: KExp },
    /// The retract parametrization of left inverses of the bidisc diagonal.
    Retract { t: f64, h: RetractH },
    /// `t z1 + (1 - t) conj(gamma) z2`, a left inverse of the bidisc
    /// geodesic `lambda -> (lambda, gamma lambda)` for unimodular `gamma`.
    BidiscLinear {
        t: f64,
        #[serde(with = "crate::complex::creim")]
        gamma: Complex64,
    },
    /// The closed form for the equality configuration on the symmetrized
    /// bidisc: components `a`, `b` of the geodesic and the unimodular
    /// constant `h` fixed by the construction.
    G2Parabolic {
        a: MoebiusSpec,
        b: MoebiusSpec,
        #[serde(with = "crate::complex::creim")]
        h: Complex64,
    },
    /// The matrix-ball average `F_h` on the tetrablock, with the same
    /// optional swap and twist as `PhiTilde`.
    TetraFh {
        beta: f64,
        h: RIIMapSpec,
        #[serde(default)]
        swapped: bool,
        #[serde(default, with = "crate::complex::creim_opt")]
        twist: Option<Complex64>,
    },
}

impl LeftInverseSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            LeftInverseSpec::PsiOmega { omega, scale, post } => {
                ensure_finite(*omega, "omega")?;
                if omega.norm() > 1.0 + tol::UNIMODULAR {
                    return Err(Error::InvalidSpec(format!(
                        "omega must lie in the closed unit disc, got |omega| = {}",
                        omega.norm()
                    )));
                }
                validate_scale_post(*scale, post)
            }
            LeftInverseSpec::PhiOmega { omega, scale, post, .. } => {
                ensure_unimodular(*omega, "omega")?;
                validate_scale_post(*scale, post)
            }
            LeftInverseSpec::PhiTilde { omega, twist, .. } => {
                ensure_unimodular(*omega, "omega")?;
                if let Some(u) = twist {
                    ensure_unimodular(*u, "twist")?;
                }
                Ok(())
            }
            LeftInverseSpec::EProj { coord, scale } => {
                if !(1..=3).contains(coord) {
                    return Err(Error::InvalidSpec(format!(
                        "projection coordinate must be 1, 2 or 3, got {coord}"
                    )));
                }
                validate_scale_post(*scale, &None)
            }
            LeftInverseSpec::BallGamma { gamma } => {
                ensure_finite(*gamma, "gamma")?;
                if gamma.norm() > 1.0 + tol::UNIMODULAR {
                    return Err(Error::InvalidSpec(format!(
                        "gamma must lie in the closed unit disc, got |gamma| = {}",
                        gamma.norm()
                    )));
                }
                Ok(())
            }
            LeftInverseSpec::ModelGAj { a, j } => {
                ensure_finite_real(*a, "A")?;
                if *a < 0.0 {
                    return Err(Error::InvalidSpec(format!(
                        "coefficient A must be nonnegative, got {a}"
                    )));
                }
                if *j < 2 {
                    return Err(Error::InvalidSpec(format!(
                        "coordinate index j must be at least 2, got {j}"
                    )));
                }
                Ok(())
            }
            LeftInverseSpec::ReinhardtBeta { beta, k } => {
                ensure_finite_real(*beta, "beta")?;
                if *beta < 0.0 {
                    return Err(Error::InvalidSpec(format!(
                        "beta must be nonnegative, got {beta}"
                    )));
                }
                if let KExp::Finite(kk) = k {
                    if *kk == 0 {
                        return Err(Error::InvalidSpec("exponent k must be positive".into()));
                    }
                } else if *beta != 0.0 {
                    return Err(Error::InvalidSpec(
                        "the infinite-exponent domain only admits beta = 0".into(),
                    ));
                }
                Ok(())
            }
            LeftInverseSpec::Retract { t, h } => {
                validate_t(*t)?;
                h.validate()
            }
            LeftInverseSpec::BidiscLinear { t, gamma } => {
                validate_t(*t)?;
                ensure_unimodular(*gamma, "gamma")
            }
            LeftInverseSpec::G2Parabolic { a, b, h } => {
                a.validate()?;
                b.validate()?;
                ensure_unimodular(*h, "h")
            }
            LeftInverseSpec::TetraFh { beta, h, twist, .. } => {
                ensure_finite_real(*beta, "beta")?;
                if !(0.0 < *beta && *beta < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "beta must lie in (0, 1), got {beta}"
                    )));
                }
                if let Some(u) = twist {
                    ensure_unimodular(*u, "twist")?;
                }
                h.validate()
            }
        }
    }

    /// Evaluate at a sampled domain point.  The point kind must match the
    /// family's domain.
    pub fn eval(&self, pt: &SamplePoint) -> Result<Complex64> {
        match (self, pt) {
            (LeftInverseSpec::PsiOmega { omega, scale, post }, SamplePoint::G2 { s, p }) => {
                let base = psi_omega(*omega, &PointG2 { s: *s, p: *p })?;
                finish(base, *scale, post)
            }
            (
                LeftInverseSpec::PhiOmega { omega, swapped, scale, post },
                SamplePoint::E { x1, x2, x3 },
            ) => {
                let base = phi_omega(*omega, &PointE { x1: *x1, x2: *x2, x3: *x3 }, *swapped)?;
                finish(base, *scale, post)
            }
            (
                LeftInverseSpec::PhiTilde { omega, swapped, twist },
                SamplePoint::E { x1, x2, x3 },
            ) => {
                let x = untwist(&PointE { x1: *x1, x2: *x2, x3: *x3 }, *swapped, *twist);
                phi_tilde(*omega, &x, false)
            }
            (LeftInverseSpec::EProj { coord, scale }, SamplePoint::E { x1, x2, x3 }) => {
                let v = match coord {
                    1 => *x1,
                    2 => *x2,
                    _ => *x3,
                };
                Ok(*scale * v)
            }
            (LeftInverseSpec::BallGamma { gamma }, SamplePoint::Pair { z1, z2 }) => {
                ball_inverse(*gamma, *z1, *z2)
            }
            (LeftInverseSpec::ModelGAj { a, j }, SamplePoint::Pair { z1, z2 }) => {
                model_gaj(*a, *j, &[*z1, *z2])
            }
            (LeftInverseSpec::ReinhardtBeta { beta, k }, SamplePoint::Pair { z1, z2 }) => {
                match k {
                    KExp::Finite(kk) => {
                        let den = ONE - cr(*beta) * z2.powu(*kk);
                        if den.norm() <= 1e-12 {
                            return Err(Error::DomainError(
                                "Reinhardt inverse evaluated outside its domain".into(),
                            ));
                        }
                        Ok(*z1 / den)
                    }
                    KExp::Infinity => Ok(*z1),
                }
            }
            (LeftInverseSpec::Retract { t, h }, SamplePoint::Pair { z1, z2 }) => {
                retract_map(*t, h, *z1, *z2)
            }
            (LeftInverseSpec::BidiscLinear { t, gamma }, SamplePoint::Pair { z1, z2 }) => {
                Ok(bidisc_linear_inverse(*t, *gamma, *z1, *z2))
            }
            (LeftInverseSpec::G2Parabolic { a, b, h }, SamplePoint::G2 { s, p }) => {
                g2_parabolic_inverse(a, b, *h, &PointG2 { s: *s, p: *p })
            }
            (
                LeftInverseSpec::TetraFh { beta, h, swapped, twist },
                SamplePoint::E { x1, x2, x3 },
            ) => {
                let x = untwist(&PointE { x1: *x1, x2: *x2, x3: *x3 }, *swapped, *twist);
                tetra_f_h(*beta, h, &x)
            }
            _ => Err(Error::DomainError(format!(
                "left-inverse family {:?} cannot be evaluated at point kind {:?}",
                variant_name(self),
                pt
            ))),
        }
    }
}

fn variant_name(spec: &LeftInverseSpec) -> &'static str {
    match spec {
        LeftInverseSpec::PsiOmega { .. } => "psi_omega",
        LeftInverseSpec::PhiOmega { .. } => "phi_omega",
        LeftInverseSpec::PhiTilde { .. } => "phi_tilde",
        LeftInverseSpec::EProj { .. } => "e_proj",
        LeftInverseSpec::BallGamma { .. } => "ball_gamma",
        LeftInverseSpec::ModelGAj { .. } => "model_gaj",
        LeftInverseSpec::ReinhardtBeta { .. } => "reinhardt_beta",
        LeftInverseSpec::Retract { .. } => "retract",
        LeftInverseSpec::BidiscLinear { .. } => "bidisc_linear",
        LeftInverseSpec::G2Parabolic { .. } => "g2_parabolic",
        LeftInverseSpec::TetraFh { .. } => "tetra_f_h",
    }
}

fn validate_t(t: f64) -> Result<()> {
    ensure_finite_real(t, "t")?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidSpec(format!(
            "weight t must lie in [0, 1], got {t}"
        )));
    }
    Ok(())
}

fn validate_scale_post(scale: Complex64, post: &Option<MoebiusFrac>) -> Result<()> {
    ensure_finite(scale, "scale")?;
    if scale.norm() > 1.0 + tol::UNIMODULAR {
        return Err(Error::InvalidSpec(format!(
            "scale must lie in the closed unit disc, got |scale| = {}",
            scale.norm()
        )));
    }
    if let Some(m) = post {
        if m.det().norm() == 0.0 {
            return Err(Error::InvalidSpec("degenerate post-composition".into()));
        }
    }
    Ok(())
}

fn finish(base: Complex64, scale: Complex64, post: &Option<MoebiusFrac>) -> Result<Complex64> {
    let v = match post {
        Some(m) => m.eval(base)?,
        None => base,
    };
    Ok(scale * v)
}

fn untwist(pt: &PointE, swapped: bool, twist: Option<Complex64>) -> PointE {
    let mut x = *pt;
    if swapped {
        x = PointE { x1: x.x2, x2: x.x1, x3: x.x3 };
    }
    if let Some(u) = twist {
        x = PointE { x1: u.conj() * x.x1, x2: u * x.x2, x3: x.x3 };
    }
    x
}

/// `(2p - omega s) / (2 - conj(omega) s)` for `|omega| <= 1`.  The
/// denominator cannot vanish on the symmetrized bidisc, where `|s| < 2`.
pub fn psi_omega(omega: Complex64, pt: &PointG2) -> Result<Complex64> {
    ensure_finite(omega, "omega")?;
    ensure_finite(pt.s, "s")?;
    ensure_finite(pt.p, "p")?;
    let den = cr(2.0) - omega.conj() * pt.s;
    if den.norm() <= 1e-12 {
        return Err(Error::Internal(
            "denominator of the Psi family vanished; point outside the domain".into(),
        ));
    }
    Ok((cr(2.0) * pt.p - omega * pt.s) / den)
}

/// `(omega x3 - x1) / (omega x2 - 1)` for unimodular `omega`, after an
/// optional coordinate swap.  Acts as the first-coordinate projection on
/// the graph `x3 = x1 x2`.
pub fn phi_omega(omega: Complex64, pt: &PointE, swapped: bool) -> Result<Complex64> {
    ensure_unimodular(omega, "omega")?;
    let (x1, x2) = if swapped { (pt.x2, pt.x1) } else { (pt.x1, pt.x2) };
    let den = omega * x2 - ONE;
    if den.norm() <= 1e-12 {
        return Err(Error::Internal(
            "denominator of the Phi family vanished; point outside the domain".into(),
        ));
    }
    Ok((omega * pt.x3 - x1) / den)
}

/// The unique in-disc root of `omega x2 t^2 - (1 + omega x3) t + x1 = 0`,
/// which is the solution of `Phi_omega(x1, t x2, t x3) = t`.  Root
/// extraction is the authoritative evaluation; see [`phi_tilde_closed`]
/// for the cross-check form.
pub fn phi_tilde(omega: Complex64, pt: &PointE, swapped: bool) -> Result<Complex64> {
    ensure_unimodular(omega, "omega")?;
    let (x1, x2) = if swapped { (pt.x2, pt.x1) } else { (pt.x1, pt.x2) };
    quad_root_in_disc(omega * x2, -(ONE + omega * pt.x3), x1)
}

/// Closed form `2 x1 / (1 + omega x3 + sqrt((1 + omega x3)^2 - 4 omega x1 x2))`
/// with the principal square root.  Used only to cross-validate the
/// root-based evaluation where the branch is unambiguous.
pub fn phi_tilde_closed(omega: Complex64, pt: &PointE, swapped: bool) -> Result<Complex64> {
    ensure_unimodular(omega, "omega")?;
    let (x1, x2) = if swapped { (pt.x2, pt.x1) } else { (pt.x1, pt.x2) };
    let u = ONE + omega * pt.x3;
    let disc = u * u - cr(4.0) * omega * x1 * x2;
    let den = u + disc.sqrt();
    if den.norm() <= 1e-6 {
        return Err(Error::Internal(
            "closed-form denominator too small for a reliable branch".into(),
        ));
    }
    Ok(cr(2.0) * x1 / den)
}

/// `z1 / sqrt(1 + gamma z2^2)` on the Euclidean ball `|z1|^2 + |z2|^2 < 1`
/// for `|gamma| <= 1`.  The square-root argument has real part at least
/// `1 - |z2|^2 > 0`, so the principal branch never meets the cut.
pub fn ball_inverse(gamma: Complex64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    ensure_finite(gamma, "gamma")?;
    if gamma.norm() > 1.0 + tol::UNIMODULAR {
        return Err(Error::InvalidSpec(format!(
            "gamma must lie in the closed unit disc, got |gamma| = {}",
            gamma.norm()
        )));
    }
    if z1.norm_sqr() + z2.norm_sqr() >= 1.0 {
        return Err(Error::DomainError(
            "ball inverse evaluated outside the open unit ball".into(),
        ));
    }
    let arg = ONE + gamma * z2 * z2;
    debug_assert!(arg.re > 0.0);
    Ok(z1 / arg.sqrt())
}

/// `z1 / sqrt(1 - A zj^2)` on the model domain `|z1| + A |z'|^2 < 1`,
/// where `z'` collects the coordinates after the first and `j >= 2` is a
/// one-based coordinate index.  The membership bound keeps the square-root
/// argument in the right half plane.
pub fn model_gaj(a: f64, j: usize, z: &[Complex64]) -> Result<Complex64> {
    ensure_finite_real(a, "A")?;
    if a < 0.0 {
        return Err(Error::InvalidSpec(format!(
            "coefficient A must be nonnegative, got {a}"
        )));
    }
    if j < 2 || j > z.len() {
        return Err(Error::InvalidSpec(format!(
            "coordinate index j = {j} out of range for a point with {} coordinates",
            z.len()
        )));
    }
    let tail: f64 = z[1..].iter().map(|w| w.norm_sqr()).sum();
    if z[0].norm() + a * tail >= 1.0 {
        return Err(Error::DomainError(format!(
            "model-domain membership |z1| + A |z'|^2 < 1 violated: {}",
            z[0].norm() + a * tail
        )));
    }
    let zj = z[j - 1];
    let arg = ONE - cr(a) * zj * zj;
    debug_assert!(arg.re > 0.0);
    Ok(z[0] / arg.sqrt())
}

/// `z / (1 - beta w^k)` on the Reinhardt model `|z| + b |w|^k < 1`, for
/// `0 <= beta < b`.  The infinite exponent degenerates the domain to the
/// bidisc, where only `beta = 0` (the coordinate projection) survives.
pub fn reinhardt_inverse(
    beta: f64,
    k: KExp,
    b: f64,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    ensure_finite_real(beta, "beta")?;
    ensure_finite_real(b, "b")?;
    if b <= 0.0 {
        return Err(Error::InvalidSpec(format!(
            "domain coefficient b must be positive, got {b}"
        )));
    }
    if !(0.0..1.0).contains(&(beta / b)) && beta != 0.0 {
        return Err(Error::InvalidSpec(format!(
            "beta must satisfy 0 <= beta < b, got beta = {beta}, b = {b}"
        )));
    }
    match k {
        KExp::Finite(kk) => {
            if kk == 0 {
                return Err(Error::InvalidSpec("exponent k must be positive".into()));
            }
            if z.norm() + b * w.norm().powi(kk as i32) >= 1.0 {
                return Err(Error::DomainError(
                    "Reinhardt membership |z| + b |w|^k < 1 violated".into(),
                ));
            }
            Ok(z / (ONE - cr(beta) * w.powu(kk)))
        }
        KExp::Infinity => {
            if beta != 0.0 {
                return Err(Error::InvalidSpec(
                    "the infinite-exponent domain only admits beta = 0".into(),
                ));
            }
            if z.norm() >= 1.0 || w.norm() >= 1.0 {
                return Err(Error::DomainError("bidisc membership violated".into()));
            }
            Ok(z)
        }
    }
}

/// The retract parametrization
/// `(t z1 + (1-t) z2 - z1 z2 h) / (1 - ((1-t) z1 + t z2) h)` of left
/// inverses of the bidisc diagonal.  Satisfies `F(lambda, lambda) = lambda`
/// exactly for every admissible `(t, h)`.
pub fn retract_map(t: f64, h: &RetractH, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    validate_t(t)?;
    h.validate()?;
    if z1.norm() >= 1.0 || z2.norm() >= 1.0 {
        return Err(Error::DomainError(
            "retract map evaluated outside the bidisc".into(),
        ));
    }
    let hv = h.eval(z1, z2);
    let tt = cr(t);
    let den = ONE - ((ONE - tt) * z1 + tt * z2) * hv;
    if den.norm() <= 1e-12 {
        return Err(Error::Internal("retract denominator vanished".into()));
    }
    let v = (tt * z1 + (ONE - tt) * z2 - z1 * z2 * hv) / den;
    if v.norm() > 1.0 + 1e-12 {
        return Err(Error::Internal(format!(
            "retract value left the closed disc: |v| = {}",
            v.norm()
        )));
    }
    Ok(v)
}

/// `t z1 + (1-t) conj(gamma) z2`, the linear left inverse of the bidisc
/// geodesic `lambda -> (lambda, gamma lambda)` for unimodular `gamma`.
pub fn bidisc_linear_inverse(t: f64, gamma: Complex64, z1: Complex64, z2: Complex64) -> Complex64 {
    cr(t) * z1 + cr(1.0 - t) * gamma.conj() * z2
}

/// Constant `h` of the parabolic closed form, derived from the geodesic
/// components: write `m = b^{-1}(a(lambda))` in the normal form
/// `sigma (lambda - beta) / (1 - conj(beta) lambda)`; then
/// `h = (sigma - 1) / (2 sigma beta)`.  Unimodular exactly when the
/// equation `a = b` has a double root on the unit circle.
pub fn derive_parabolic_h(a: &MoebiusSpec, b: &MoebiusSpec) -> Result<Complex64> {
    let m = b.inverse().compose(a)?;
    if m.alpha.norm() <= 1e-12 {
        return Err(Error::InvalidSpec(
            "components coincide up to rotation; no parabolic normal form".into(),
        ));
    }
    Ok((m.tau - ONE) / (cr(2.0) * m.tau * m.alpha))
}

/// The parabolic closed form on the symmetrized bidisc.  The two
/// coordinates of the underlying bidisc point are recovered as the roots of
/// `t^2 - s t + p`; the formula is evaluated for both root orders, which
/// must agree, and the mean is returned.
pub fn g2_parabolic_inverse(
    a: &MoebiusSpec,
    b: &MoebiusSpec,
    h: Complex64,
    pt: &PointG2,
) -> Result<Complex64> {
    ensure_finite(pt.s, "s")?;
    ensure_finite(pt.p, "p")?;
    ensure_finite(h, "h")?;
    let (r1, r2) = crate::complex::quadratic_roots(ONE, -pt.s, pt.p);
    let ai = a.inverse();
    let bi = b.inverse();
    let one_order = |z1: Complex64, z2: Complex64| -> Result<Complex64> {
        let u = ai.eval(z1);
        let v = bi.eval(z2);
        let mean = (u + v) / cr(2.0);
        let den = ONE - mean * h;
        if den.norm() <= 1e-12 {
            return Err(Error::Internal("parabolic denominator vanished".into()));
        }
        Ok((mean - u * v * h) / den)
    };
    let v12 = one_order(r1, r2)?;
    let v21 = one_order(r2, r1)?;
    if (v12 - v21).norm() > tol::IDENTITY {
        return Err(Error::Internal(format!(
            "parabolic value depends on the root order: |delta| = {}",
            (v12 - v21).norm()
        )));
    }
    Ok((v12 + v21) / cr(2.0))
}

/// Matrix-ball automorphism
/// `(1 - a a*)^{-1/2} (x - a) (1 - a* x)^{-1} (1 - a* a)^{1/2}` centered at
/// `a`.  Sends `a` to `0` and `0` to `-a`; its inverse is the automorphism
/// centered at `-a`.
pub fn phi_a_automorphism(a: &Mat2, x: &Mat2) -> Result<Mat2> {
    a.validate_finite()?;
    x.validate_finite()?;
    if a.operator_norm() >= 1.0 {
        return Err(Error::InvalidSpec(
            "automorphism center must have operator norm < 1".into(),
        ));
    }
    let id = Mat2::identity();
    let left = id.sub(&a.mul(&a.adjoint())).psd_sqrt()?.inverse()?;
    let right = id.sub(&a.adjoint().mul(a)).psd_sqrt()?;
    let mid = x.sub(a);
    let inv = id.sub(&a.adjoint().mul(x)).inverse()?;
    Ok(left.mul(&mid).mul(&inv).mul(&right))
}

/// Evaluate a matrix-ball scalar map: automorphism chain, then top-left
/// entry.
pub fn rii_h_eval(spec: &RIIMapSpec, x: &Mat2) -> Result<Complex64> {
    spec.validate()?;
    let mut m = *x;
    for a in &spec.automorphisms {
        m = phi_a_automorphism(a, &m)?;
    }
    Ok(m.m[0][0])
}

/// `G_h` on the symmetric matrix ball:
/// `((1-b^2) z1 - (z1 z2 - (a-b)^2) h) / ((1-ab)^2 - b^2 z1 z2 - (1-b^2) z2 h)`
/// for a symmetric matrix `[[z1, a], [a, z2]]` and a scalar `h` of modulus
/// at most one.  Recovers `lambda` from `[[(1-b^2) lambda, b], [b, 0]]` for
/// every such `h`.
pub fn g_h(beta: f64, h_value: Complex64, x: &Mat2) -> Result<Complex64> {
    ensure_finite_real(beta, "beta")?;
    if !(0.0 < beta && beta < 1.0) {
        return Err(Error::InvalidSpec(format!(
            "beta must lie in (0, 1), got {beta}"
        )));
    }
    ensure_finite(h_value, "h")?;
    x.validate_finite()?;
    if (x.m[0][1] - x.m[1][0]).norm() > 1e-9 {
        return Err(Error::NotSymmetric);
    }
    let z1 = x.m[0][0];
    let a = (x.m[0][1] + x.m[1][0]) / cr(2.0);
    let z2 = x.m[1][1];
    let b = cr(beta);
    let num = (ONE - b * b) * z1 - (z1 * z2 - (a - b) * (a - b)) * h_value;
    let den = (ONE - a * b) * (ONE - a * b) - b * b * z1 * z2 - (ONE - b * b) * z2 * h_value;
    if den.norm() <= 1e-12 {
        return Err(Error::Internal(
            "denominator of the matrix-ball inverse vanished".into(),
        ));
    }
    Ok(num / den)
}

/// The branch-free average
/// `F_h(x) = (G_h(M+) + G_h(M-)) / 2` over the two symmetric matrices
/// `M+- = [[x1, +-a], [+-a, x2]]` with `a^2 = x1 x2 - x3`.  A left inverse
/// of the family
/// `lambda -> ((1-b^2) lambda, (1-b^2) Z, lambda Z - b^2) / (1 - b^2 lambda Z)`
/// for every self-map `Z`; on `(lambda, 0, 0)` it takes the value
/// `lambda (1 - beta^4)`.
pub fn tetra_f_h(beta: f64, h: &RIIMapSpec, pt: &PointE) -> Result<Complex64> {
    ensure_finite(pt.x1, "x1")?;
    ensure_finite(pt.x2, "x2")?;
    ensure_finite(pt.x3, "x3")?;
    let a = (pt.x1 * pt.x2 - pt.x3).sqrt();
    let mp = Mat2::symmetric(pt.x1, a, pt.x2);
    let mm = Mat2::symmetric(pt.x1, -a, pt.x2);
    if mp.operator_norm() >= 1.0 + 1e-9 {
        return Err(Error::DomainError(
            "symmetric lift has operator norm >= 1; point outside the tetrablock".into(),
        ));
    }
    let gp = g_h(beta, rii_h_eval(h, &mp)?, &mp)?;
    let gm = g_h(beta, rii_h_eval(h, &mm)?, &mm)?;
    Ok((gp + gm) / cr(2.0))
}
