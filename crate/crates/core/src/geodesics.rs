//! Complex-geodesic constructors for the bidisc, the ball, the
//! symmetrized bidisc, and the tetrablock, with spec validation and
//! closed-form evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{cr, ensure_finite, ensure_unimodular, BlaschkeSpec, MoebiusSpec, ONE};
use crate::domains::{PointE, PointG2};
use crate::error::{Error, Result};
use crate::selfmap::SelfMapSpec;
use crate::tol;

/// Geodesic of the symmetrized bidisc. Every complex geodesic is, up to
/// parameter change, either the symmetrization of a degree-two Blaschke
/// pair or the symmetrization of the graph of a disc automorphism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum G2GeodesicSpec {
    /// lambda -> pi(B(mu), B(-mu)), mu^2 = lambda, B(z) = z(z-alpha)/(1-conj(alpha)z).
    BlaschkeForm { alpha: BlaschkeSpec },
    /// lambda -> pi(lambda, a(lambda)) for a disc automorphism a without
    /// interior fixed points.
    AutoForm { a: MoebiusSpec },
}

impl G2GeodesicSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            G2GeodesicSpec::BlaschkeForm { alpha } => alpha.validate(),
            G2GeodesicSpec::AutoForm { a } => {
                a.validate()?;
                if a.alpha.norm() <= 1e-9 {
                    // alpha = 0 forces tau = 1 and the map degenerates to
                    // the identity, whose graph is the diagonal family;
                    // that case belongs to the symmetric Blaschke form.
                    return Err(Error::InvalidSpec(
                        "automorphism form needs alpha != 0; use the symmetric \
                         Blaschke form with alpha = 0 for the diagonal family"
                            .into(),
                    ));
                }
                let margin = (ONE - a.tau).norm() - 2.0 * a.alpha.norm();
                if margin > tol::EQUALITY_MANIFOLD {
                    return Err(Error::InvalidSpec(format!(
                        "automorphism form needs |1 - tau| <= 2|alpha| \
                         (no fixed point in the disc); margin {margin:.3e}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// True when |1 - tau| = 2|alpha| within the equality tolerance, the
    /// boundary-tangency regime of the automorphism form.
    pub fn is_parabolic_boundary(&self) -> bool {
        match self {
            G2GeodesicSpec::BlaschkeForm { .. } => false,
            G2GeodesicSpec::AutoForm { a } => {
                ((ONE - a.tau).norm() - 2.0 * a.alpha.norm()).abs() <= tol::EQUALITY_MANIFOLD
            }
        }
    }

    pub fn eval(&self, lambda: Complex64) -> Result<PointG2> {
        ensure_finite(lambda, "geodesic parameter")?;
        match self {
            G2GeodesicSpec::BlaschkeForm { alpha } => {
                // Symmetric closed form of pi(B(mu), B(-mu)) with mu^2 = lambda:
                //   s = 2 lambda (1 - |alpha|^2) / (1 - conj(alpha)^2 lambda)
                //   p = lambda (lambda - alpha^2) / (1 - conj(alpha)^2 lambda)
                // Branch-free by construction; agrees with the literal pair
                // evaluation (see eval_blaschke_pair).
                let a = alpha.alpha;
                let den = ONE - a.conj() * a.conj() * lambda;
                let s = cr(2.0) * lambda * cr(1.0 - a.norm_sqr()) / den;
                let p = lambda * (lambda - a * a) / den;
                Ok(PointG2::new(s, p))
            }
            G2GeodesicSpec::AutoForm { a } => {
                let v = a.eval(lambda);
                Ok(PointG2::new(lambda + v, lambda * v))
            }
        }
    }
}

/// Literal symmetrized pair evaluation at a chosen square root mu of the
/// parameter. Symmetric in mu <-> -mu, which the tests pin down bit for bit.
pub fn eval_blaschke_pair(alpha: &BlaschkeSpec, mu: Complex64) -> PointG2 {
    let b_plus = alpha.eval(mu);
    let b_minus = alpha.eval(-mu);
    PointG2::new(b_plus + b_minus, b_plus * b_minus)
}

/// The contracting factor of the second tetrablock form: Z(lambda) is
/// either lambda itself or lambda times a further self map that is not a
/// unimodular constant (so |Z(lambda)| < |lambda| off the origin).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "z", rename_all = "snake_case")]
pub enum EFormVAZ {
    Identity,
    Strict { w: SelfMapSpec },
}

impl EFormVAZ {
    pub fn validate(&self) -> Result<()> {
        match self {
            EFormVAZ::Identity => Ok(()),
            EFormVAZ::Strict { w } => {
                w.validate()?;
                if w.is_unimodular_constant() {
                    return Err(Error::InvalidSpec(
                        "Z = c*lambda with |c| = 1 is the identity case up to phase; \
                         absorb the phase into (b, d) and use z = identity"
                            .into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        match self {
            EFormVAZ::Identity => lambda,
            EFormVAZ::Strict { w } => lambda * w.eval(lambda),
        }
    }
}

/// Geodesic of the tetrablock, in the two normalized shapes: the family
/// through the triangular slices (form0, image meets the royal variety at
/// the origin when C > 0 and lies inside it when C = 0), and the
/// royal-avoiding family built from a unitary coefficient matrix (form_va).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum EGeodesicSpec {
    Form0 {
        #[serde(with = "crate::complex::creim")]
        omega1: Complex64,
        #[serde(with = "crate::complex::creim")]
        omega2: Complex64,
        c: f64,
        psi: SelfMapSpec,
    },
    FormVa {
        beta: f64,
        #[serde(with = "crate::complex::creim")]
        a: Complex64,
        #[serde(with = "crate::complex::creim")]
        b: Complex64,
        #[serde(with = "crate::complex::creim")]
        c: Complex64,
        #[serde(with = "crate::complex::creim")]
        d: Complex64,
        z: EFormVAZ,
    },
}

impl EGeodesicSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            EGeodesicSpec::Form0 { omega1, omega2, c, psi } => {
                ensure_unimodular(*omega1, "omega1")?;
                ensure_unimodular(*omega2, "omega2")?;
                if !c.is_finite() || !(0.0..=1.0).contains(c) {
                    return Err(Error::InvalidSpec(format!("C must lie in [0, 1], got {c}")));
                }
                psi.validate()?;
                let at0 = psi.at_zero();
                if (at0 + cr(*c)).norm() > tol::UNIMODULAR {
                    return Err(Error::InvalidSpec(format!(
                        "form0 needs psi(0) = -C; got psi(0) = {at0}, C = {c}"
                    )));
                }
                Ok(())
            }
            EGeodesicSpec::FormVa { beta, a, b, c, d, z } => {
                if !beta.is_finite() || !(*beta > 0.0 && *beta < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "beta must lie in (0, 1), got {beta}"
                    )));
                }
                for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
                    ensure_finite(*v, name)?;
                }
                let row1 = a.norm_sqr() + b.norm_sqr();
                let row2 = c.norm_sqr() + d.norm_sqr();
                let ortho = a * c.conj() + b * d.conj();
                if (row1 - 1.0).abs() > tol::UNIMODULAR
                    || (row2 - 1.0).abs() > tol::UNIMODULAR
                    || ortho.norm() > tol::UNIMODULAR
                {
                    return Err(Error::InvalidSpec(format!(
                        "coefficient matrix must be unitary: |a|^2+|b|^2 = {row1}, \
                         |c|^2+|d|^2 = {row2}, a conj(c) + b conj(d) = {ortho}"
                    )));
                }
                if matches!(z, EFormVAZ::Identity) && (a * a + b * b).norm() <= 1e-9 {
                    // a^2 + b^2 = 0 collapses the first two coordinates,
                    // the image degenerates into the x3 axis and the curve
                    // is a square of a Blaschke product, not a geodesic.
                    return Err(Error::InvalidSpec(
                        "degenerate coefficient matrix: a^2 + b^2 = 0 with the \
                         identity inner function does not give a geodesic"
                            .into(),
                    ));
                }
                z.validate()
            }
        }
    }

    pub fn eval(&self, lambda: Complex64) -> Result<PointE> {
        ensure_finite(lambda, "geodesic parameter")?;
        match self {
            EGeodesicSpec::Form0 { omega1, omega2, c, psi } => {
                let ps = psi.eval(lambda);
                let cc = cr(*c);
                let x1 = *omega1 * (ps + cc) / (ONE + cc);
                let x2 = *omega2 * lambda * (ONE + cc * ps) / (ONE + cc);
                let x3 = *omega1 * *omega2 * lambda * ps;
                Ok(PointE::new(x1, x2, x3))
            }
            EGeodesicSpec::FormVa { beta, a, b, c, d, z } => {
                let zv = z.eval(lambda);
                let bb = cr(*beta);
                let av = a * a * lambda + b * b * zv;
                let bv = a * c * lambda + b * d * zv;
                let cv = c * c * lambda + d * d * zv;
                let delta = (ONE + bb * bv) * (ONE + bb * bv) - av * cv * bb * bb;
                if delta.norm() <= 1e-13 {
                    return Err(Error::Internal(format!(
                        "denominator Delta vanished at lambda = {lambda}; \
                         spec should not admit this"
                    )));
                }
                let scale = cr(1.0 - beta * beta);
                let x1 = av * scale / delta;
                let x2 = cv * scale / delta;
                let x3 = (av * cv - (bv + bb) * (bv + bb)) / delta;
                Ok(PointE::new(x1, x2, x3))
            }
        }
    }

    /// The same form0 value computed through the equivalent rewriting with
    /// a centered self map nu = (psi + C)/(1 + C psi), nu(0) = 0:
    /// ( w1 (1-C)nu/(1-C nu), w2 lambda (1-C)/(1-C nu), w1 w2 lambda (nu-C)/(1-C nu) ).
    /// Defined for C < 1; the tests cross-check it against eval.
    pub fn eval_form0_rewritten(&self, lambda: Complex64) -> Result<PointE> {
        match self {
            EGeodesicSpec::Form0 { omega1, omega2, c, psi } if *c < 1.0 => {
                let cc = cr(*c);
                let ps = psi.eval(lambda);
                let nu = (ps + cc) / (ONE + cc * ps);
                let den = ONE - cc * nu;
                let oneminus = cr(1.0 - c);
                Ok(PointE::new(
                    *omega1 * oneminus * nu / den,
                    *omega2 * lambda * oneminus / den,
                    *omega1 * *omega2 * lambda * (nu - cc) / den,
                ))
            }
            _ => Err(Error::InvalidSpec(
                "rewritten form0 evaluation needs a form0 spec with C < 1".into(),
            )),
        }
    }
}

/// Geodesic of the bidisc through (0,0) and a graph point: lambda -> (lambda, g(lambda)).
pub fn eval_bidisc_geodesic(g: &SelfMapSpec, lambda: Complex64) -> (Complex64, Complex64) {
    (lambda, g.eval(lambda))
}

/// The normalized geodesic of the Euclidean ball: lambda -> (lambda, 0).
pub fn eval_ball_geodesic(lambda: Complex64) -> (Complex64, Complex64) {
    (lambda, Complex64::new(0.0, 0.0))
}
