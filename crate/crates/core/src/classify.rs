//! Uniqueness decision procedures for left inverses of complex geodesics.
//!
//! Each classifier takes a validated geodesic spec, decides whether its left
//! inverse is unique, and returns verified witnesses: every emitted witness
//! is checked against the geodesic on a 200-point grid, and every non-unique
//! verdict ships pairwise-distinct witnesses per the sampling oracle.
//! Decision boundaries (equality manifolds) are tested with absolute
//! tolerance 1e-9; inputs inside the narrow band between that tolerance and
//! the witness accuracy fail loudly with an internal error instead of
//! misreporting.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{
    cr, ensure_finite, ensure_unimodular, unit, BlaschkeSpec, FixedPoints, MoebiusFrac,
    MoebiusSpec, I, ONE, ZERO,
};
use crate::domains::{DomainTag, KExp, SamplePoint};
use crate::error::{Error, Result};
use crate::geodesics::{EFormVAZ, EGeodesicSpec, G2GeodesicSpec};
use crate::leftinv::{derive_parabolic_h, LeftInverseSpec, RIIMapSpec};
use crate::oracle::{distinct_maps, verify_left_inverse};
use crate::selfmap::SelfMapSpec;
use crate::tol;

/// Grid size for the witness identity check.
const WITNESS_GRID: usize = 200;
/// Sample count and seed for the pairwise distinctness check.
const DISTINCT_SAMPLES: usize = 2000;
const DISTINCT_SEED: u64 = 7;
/// Two contact parameters closer than this merge into one tangency event.
const TANGENT_MERGE: f64 = 1e-6;
/// Candidate circle angles closer than this belong to one cluster.
const CLUSTER_ARC: f64 = 1e-4;
/// Below this modulus a matrix entry counts as a structural zero.
const ZERO_ENTRY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unique,
    NonUnique,
    InvalidSpec { reason: String },
}

/// Outcome of a uniqueness decision. `witnesses` holds closed-form left
/// inverses of the classified geodesic: at least two pairwise-distinct ones
/// for a non-unique verdict, one for a unique verdict when the family
/// grammar can express it, none otherwise. `residual_report[i]` is the
/// maximal identity defect of `witnesses[i]` over the verification grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub witnesses: Vec<LeftInverseSpec>,
    pub residual_report: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexVerdict {
    Unique,
    Inconclusive,
}

/// Rank certificate for uniqueness through several geodesics of a convex
/// domain with two common points. `Unique` means the difference vectors had
/// full rank n-1 at `witness_lambda`; failure of the rank test proves
/// nothing, so the alternative verdict is `Inconclusive`, never non-unique.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexCertificate {
    #[serde(with = "crate::complex::creim")]
    pub witness_lambda: Complex64,
    pub rank: usize,
    pub verdict: ConvexVerdict,
}

/// Geodesic of a product-like convex domain as a callable into C^n.
pub type GeodesicMap<'a> = Box<dyn Fn(Complex64) -> Result<Vec<Complex64>> + Sync + 'a>;

fn invalid(e: Error) -> Classification {
    Classification {
        verdict: Verdict::InvalidSpec { reason: e.to_string() },
        witnesses: Vec::new(),
        residual_report: Vec::new(),
        note: None,
    }
}

/// Runs the soundness gates on a decided outcome: every witness must invert
/// the geodesic on the grid, and non-unique witness lists must be pairwise
/// distinct on domain samples. Violations are internal errors, since the
/// witnesses are constructed here, not supplied by the caller.
fn finalize(
    geodesic: &(dyn Fn(Complex64) -> Result<SamplePoint> + Sync),
    tag: &DomainTag,
    verdict: Verdict,
    witnesses: Vec<LeftInverseSpec>,
    note: Option<String>,
) -> Result<Classification> {
    let mut residual_report = Vec::with_capacity(witnesses.len());
    for w in &witnesses {
        w.validate()?;
        let report =
            verify_left_inverse(geodesic, |pt: &SamplePoint| w.eval(pt), WITNESS_GRID, tol::IDENTITY)?;
        if !report.pass {
            return Err(Error::Internal(format!(
                "constructed witness fails its own identity check: residual {:.3e} for {w:?}",
                report.max_residual
            )));
        }
        residual_report.push(report.max_residual);
    }
    if matches!(verdict, Verdict::NonUnique) {
        if witnesses.len() < 2 && note.is_none() {
            return Err(Error::Internal(
                "non-unique verdict without two witnesses or an explanatory note".into(),
            ));
        }
        for i in 0..witnesses.len() {
            for j in (i + 1)..witnesses.len() {
                let (wi, wj) = (&witnesses[i], &witnesses[j]);
                let (distinct, sup) = distinct_maps(
                    |pt: &SamplePoint| wi.eval(pt),
                    |pt: &SamplePoint| wj.eval(pt),
                    tag,
                    DISTINCT_SAMPLES,
                    DISTINCT_SEED,
                    tol::DISTINCT,
                )?;
                if !distinct {
                    return Err(Error::Internal(format!(
                        "witnesses {i} and {j} are not distinct: sup difference {sup:.3e}"
                    )));
                }
            }
        }
    }
    Ok(Classification { verdict, witnesses, residual_report, note })
}

/// Tests whether `(1 + tau alpha conj(omega))^2 / tau` is real and positive,
/// the admissibility condition for the slope-omega linear functional on the
/// geodesic built from the automorphism with multiplier tau and center alpha.
pub fn psi_admissible(tau: Complex64, alpha: Complex64, omega: Complex64) -> Result<bool> {
    ensure_unimodular(tau, "tau")?;
    ensure_finite(alpha, "alpha")?;
    if alpha.norm() >= 1.0 {
        return Err(Error::InvalidSpec(format!(
            "alpha must lie in the open disc, got |alpha| = {}",
            alpha.norm()
        )));
    }
    ensure_unimodular(omega, "omega")?;
    let w = ONE + tau * alpha * omega.conj();
    let g = w * w / tau;
    Ok(g.im.abs() <= tol::EQUALITY_MANIFOLD && g.re > tol::EQUALITY_MANIFOLD)
}

/// Scans the unit circle for the omegas admissible for the automorphism
/// form with multiplier tau and center alpha, returning one representative
/// per cluster, sorted by angle. Zeros of the imaginary part are refined by
/// bisection and tangential touch points by direct minimization, both well
/// below the 1e-6 arc resolution the representatives are reported at.
pub fn admissible_omega_set(
    tau: Complex64,
    alpha: Complex64,
    grid: usize,
) -> Result<Vec<Complex64>> {
    ensure_unimodular(tau, "tau")?;
    ensure_finite(alpha, "alpha")?;
    if alpha.norm() == 0.0 || alpha.norm() >= 1.0 {
        return Err(Error::InvalidSpec(format!(
            "alpha must lie in the punctured open disc, got |alpha| = {}",
            alpha.norm()
        )));
    }
    let quality = |theta: f64| {
        let w = ONE + tau * alpha * unit(-theta);
        w * w / tau
    };
    let im = |theta: f64| quality(theta).im;

    let n = grid.max(64);
    let step = TAU / n as f64;
    let vals: Vec<f64> = (0..n).map(|j| im(j as f64 * step)).collect();

    let mut cands: Vec<f64> = Vec::new();
    for j in 0..n {
        let t0 = j as f64 * step;
        let t1 = t0 + step;
        let (v0, v1) = (vals[j], vals[(j + 1) % n]);
        if v0 == 0.0 {
            cands.push(t0);
            continue;
        }
        if v0 * v1 < 0.0 {
            let (mut lo, mut hi, mut flo) = (t0, t1, v0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = im(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            cands.push(0.5 * (lo + hi));
        }
    }
    // A tangency touches zero without a sign change; catch it at the local
    // minima of |Im| and keep it only if the refined value really vanishes.
    for j in 0..n {
        let prev = vals[(j + n - 1) % n].abs();
        let here = vals[j].abs();
        let next = vals[(j + 1) % n].abs();
        if here < prev && here <= next {
            let (mut lo, mut hi) = ((j as f64 - 1.0) * step, (j as f64 + 1.0) * step);
            for _ in 0..100 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if im(m1).abs() <= im(m2).abs() {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let t = 0.5 * (lo + hi);
            if im(t).abs() <= tol::EQUALITY_MANIFOLD {
                cands.push(t);
            }
        }
    }

    let mut angles: Vec<f64> = cands
        .into_iter()
        .map(|t| t.rem_euclid(TAU))
        .filter(|&t| quality(t).re > tol::EQUALITY_MANIFOLD)
        .collect();
    angles.sort_by(f64::total_cmp);

    let mut groups: Vec<Vec<f64>> = Vec::new();
    for t in angles {
        match groups.last_mut() {
            Some(g) if t - *g.last().unwrap() <= CLUSTER_ARC => g.push(t),
            _ => groups.push(vec![t]),
        }
    }
    if groups.len() > 1 {
        let wrap = groups[0][0] + TAU - *groups.last().unwrap().last().unwrap();
        if wrap <= CLUSTER_ARC {
            let tail = groups.pop().unwrap();
            for t in tail {
                groups[0].push(t - TAU);
            }
        }
    }
    let mut reps: Vec<f64> = groups
        .into_iter()
        .map(|g| (g.iter().sum::<f64>() / g.len() as f64).rem_euclid(TAU))
        .collect();
    reps.sort_by(f64::total_cmp);
    Ok(reps.into_iter().map(unit).collect())
}

fn psi_scaled(omega: Complex64, scale: Complex64) -> LeftInverseSpec {
    LeftInverseSpec::PsiOmega { omega, scale, post: None }
}

/// Left inverse of the automorphism-form geodesic attached to a circle
/// fixed point zeta of a. The slope-zeta functional composed with the
/// geodesic is a degree-two rational map whose numerator and denominator
/// share the root zeta; cancelling it leaves a disc automorphism mu, and
/// the witness is mu^{-1} applied after the functional.
fn g2_deflation(a: &MoebiusSpec, zeta: Complex64) -> Result<LeftInverseSpec> {
    if (zeta.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::Internal(format!(
            "expected a circle fixed point, got |zeta| = {}",
            zeta.norm()
        )));
    }
    let zeta = zeta / cr(zeta.norm());
    if (a.eval(zeta) - zeta).norm() > 1e-6 {
        return Err(Error::Internal("fixed-point residual too large for deflation".into()));
    }
    let (tau, al) = (a.tau, a.alpha);
    let denom = cr(2.0) * tau + zeta * al.conj();
    let rho_n = tau * al / denom;
    let rho_d = (cr(2.0) + zeta.conj() * tau * al) / al.conj();
    let k = zeta * denom / al.conj();
    let post = MoebiusFrac { a: rho_d, b: -k * rho_n, c: ONE, d: -k };
    Ok(LeftInverseSpec::PsiOmega { omega: zeta, scale: ONE, post: Some(post) })
}

/// Decides left-inverse uniqueness for a geodesic of the symmetrized
/// bidisc. The symmetric Blaschke form is unique exactly for a center in
/// the punctured open disc; its two degenerations (royal and flat) admit
/// families of inverses. The automorphism form is unique exactly on the
/// boundary-tangency manifold, where the closed-form parabolic witness is
/// emitted; off it, each of the two circle fixed points yields a witness.
pub fn classify_g2(spec: &G2GeodesicSpec) -> Result<Classification> {
    if let Err(e) = spec.validate() {
        return Ok(invalid(e));
    }
    let geo = |lambda: Complex64| -> Result<SamplePoint> {
        let pt = spec.eval(lambda)?;
        Ok(SamplePoint::G2 { s: pt.s, p: pt.p })
    };
    let (verdict, witnesses) = match spec {
        G2GeodesicSpec::BlaschkeForm { alpha } => {
            let a = alpha.alpha;
            if a.norm() <= tol::EQUALITY_MANIFOLD {
                // Royal geodesic (2 lambda, lambda^2): -conj(w) Psi_w
                // inverts it for every unimodular w.
                let ws = [ONE, I, -ONE, -I].iter().map(|&w| psi_scaled(w, -w.conj())).collect();
                (Verdict::NonUnique, ws)
            } else if alpha.is_boundary() {
                // Flat geodesic (0, -alpha^2 lambda): Psi_w collapses to
                // the p coordinate for every w in the closed disc.
                let sc = -(a * a).conj();
                let ws =
                    [ZERO, ONE, -ONE, I, cr(0.5)].iter().map(|&w| psi_scaled(w, sc)).collect();
                (Verdict::NonUnique, ws)
            } else {
                (Verdict::Unique, vec![psi_scaled(a / a.conj(), -(a.conj() / a))])
            }
        }
        G2GeodesicSpec::AutoForm { a } => {
            if spec.is_parabolic_boundary() {
                let id = MoebiusSpec::identity();
                let h = derive_parabolic_h(&id, a)?;
                // The derived constant is unimodular on the tangency
                // manifold; renormalize so the 1e-9 manifold slack cannot
                // trip the witness validation.
                let h = h / cr(h.norm());
                (Verdict::Unique, vec![LeftInverseSpec::G2Parabolic { a: id, b: a.clone(), h }])
            } else {
                let (r1, r2) = match a.fixed_points() {
                    FixedPoints::Pair(r1, r2) => (r1, r2),
                    other => {
                        return Err(Error::Internal(format!(
                            "expected two circle fixed points off the tangency manifold, got {other:?}"
                        )))
                    }
                };
                (Verdict::NonUnique, vec![g2_deflation(a, r1)?, g2_deflation(a, r2)?])
            }
        }
    };
    finalize(&geo, &DomainTag::G2, verdict, witnesses, None)
}

type Outcome = (Verdict, Vec<LeftInverseSpec>, Option<String>);

fn form0_outcome(w1: Complex64, w2: Complex64, c: f64, psi: &SelfMapSpec) -> Outcome {
    // Swapping coordinates turns Phi_{conj(w1)} into a left inverse for
    // every member of the family; the remaining question is whether any
    // other map joins it.
    let canonical = LeftInverseSpec::PhiOmega {
        omega: w1.conj(),
        swapped: true,
        scale: w2.conj(),
        post: None,
    };
    if c <= tol::EQUALITY_MANIFOLD {
        // Image inside the royal surface x3 = x1 x2, where every swapped
        // Phi_w collapses to x2, as does the plain coordinate projection.
        let ws = vec![
            canonical,
            LeftInverseSpec::EProj { coord: 2, scale: w2.conj() },
            LeftInverseSpec::PhiOmega {
                omega: -w1.conj(),
                swapped: true,
                scale: w2.conj(),
                post: None,
            },
        ];
        (Verdict::NonUnique, ws, None)
    } else if (c - 1.0).abs() <= tol::EQUALITY_MANIFOLD {
        // psi(0) = -1 forces psi = -1, so the curve is (0, 0, -w1 w2 lambda)
        // and both coordinate orders of Phi_1 read off x3.
        let sc = (w1 * w2).conj();
        let ws = vec![
            LeftInverseSpec::PhiOmega { omega: ONE, swapped: false, scale: sc, post: None },
            LeftInverseSpec::PhiOmega { omega: ONE, swapped: true, scale: sc, post: None },
        ];
        (Verdict::NonUnique, ws, None)
    } else if psi.is_automorphism() {
        // psi = u (lambda - a)/(1 - conj(a) lambda) with u a = C; the
        // unswapped functional at u conj(w2) then deflates as well.
        let u = psi.scale;
        let second = LeftInverseSpec::PhiOmega {
            omega: u * w2.conj(),
            swapped: false,
            scale: (u * w1).conj(),
            post: None,
        };
        (Verdict::NonUnique, vec![canonical, second], None)
    } else {
        (Verdict::Unique, vec![canonical], None)
    }
}

/// Uniqueness events for the unitary-coefficient form with inner function
/// lambda itself. Writing K = P R - Q^2 for P = a^2+b^2, Q = ac+bd,
/// R = c^2+d^2, the functionals that invert the curve correspond to circle
/// points zeta where a degree-two numerator and denominator share a root;
/// the denominator is the reflection of the numerator, so shared roots sit
/// on the circle and solve sin(theta + arg(K)/2) = S with
/// S = Im(e^{-i arg(K)/2} Q)(1+beta^2)/(2 beta). |S| <= 1 gives one or two
/// events, each providing an unswapped and a swapped witness; |S| > 1 means
/// the curve crosses the royal surface inside the disc and is rejected.
fn formva_identity_outcome(
    beta: f64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<Outcome> {
    let p = a * a + b * b;
    let q = a * c + b * d;
    let r = c * c + d * d;
    let big_k = p * r - q * q;
    if (big_k.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "squared determinant lost unimodularity: |K| = {}",
            big_k.norm()
        )));
    }
    let chi = 0.5 * big_k.arg();
    let rot_q = unit(-chi) * q;
    if rot_q.re.abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "coefficient structure violated: Re(e^(-i chi) Q) = {}",
            rot_q.re
        )));
    }
    let s = rot_q.im * (1.0 + beta * beta) / (2.0 * beta);
    if s.abs() > 1.0 + tol::EQUALITY_MANIFOLD {
        let reason = format!(
            "the curve meets the royal surface x1 x2 = x3 inside the disc \
             (contact parameter {s:.6} exceeds 1 in modulus), so it is not a geodesic"
        );
        return Ok((Verdict::InvalidSpec { reason }, Vec::new(), None));
    }
    let s = s.clamp(-1.0, 1.0);
    let thetas = if 1.0 - s.abs() <= TANGENT_MERGE {
        vec![s.signum() * FRAC_PI_2]
    } else {
        vec![s.asin(), PI - s.asin()]
    };
    let mut ws = Vec::with_capacity(2 * thetas.len());
    for theta in thetas {
        let zeta = unit(theta - chi);
        let den = big_k * zeta * zeta - cr(2.0 * beta) * q * zeta - cr(beta * beta);
        if den.norm() <= 1e-12 {
            return Err(Error::Internal("degenerate denominator at a contact event".into()));
        }
        let base = cr(1.0 - beta * beta) * zeta / den;
        let rho_n = -cr(beta * beta) / (big_k * zeta);
        let rho_d = -ONE / (cr(beta * beta) * big_k * zeta);
        for (coeff, swapped) in [(p, false), (r, true)] {
            let omega = coeff * base;
            if (omega.norm() - 1.0).abs() > 1e-6 {
                return Err(Error::Internal(format!(
                    "contact functional drifted off the circle: |omega| = {}",
                    omega.norm()
                )));
            }
            let omega = omega / cr(omega.norm());
            let post = MoebiusFrac {
                a: cr(beta * beta) * rho_d,
                b: -omega * rho_n,
                c: cr(beta * beta),
                d: -omega,
            };
            ws.push(LeftInverseSpec::PhiOmega { omega, swapped, scale: ONE, post: Some(post) });
        }
    }
    Ok((Verdict::NonUnique, ws, None))
}

fn twist_of(u: Complex64) -> Option<Complex64> {
    if (u - ONE).norm() <= tol::UNIMODULAR {
        None
    } else {
        Some(u)
    }
}

fn formva_strict_outcome(
    beta: f64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<Outcome> {
    let _ = (a, b);
    let crit = c.norm() * d.norm() * (1.0 + beta * beta) - beta;
    if crit.abs() <= tol::EQUALITY_MANIFOLD {
        let note = "touching configuration |c||d|(1+beta^2) = beta: the left inverse is \
                    unique but has no closed form in the represented witness families"
            .to_string();
        return Ok((Verdict::Unique, Vec::new(), Some(note)));
    }
    if crit > 0.0 {
        let reason = format!(
            "|c||d|(1+beta^2) = {:.6} exceeds beta = {beta}; the curve meets the royal \
             surface inside the disc and is not a geodesic",
            crit + beta
        );
        return Ok((Verdict::InvalidSpec { reason }, Vec::new(), None));
    }
    if c.norm() <= ZERO_ENTRY {
        // b = 0 by unitarity; untwisting by a^2 lands on the normalized
        // curve that both closed-form witnesses invert.
        let u = a * a;
        let ws = vec![
            LeftInverseSpec::PhiTilde { omega: ONE, swapped: false, twist: twist_of(u) },
            LeftInverseSpec::TetraFh {
                beta,
                h: RIIMapSpec::canonical(beta)?,
                swapped: false,
                twist: twist_of(u),
            },
        ];
        return Ok((Verdict::NonUnique, ws, None));
    }
    if d.norm() <= ZERO_ENTRY {
        // a = 0; the swap exchanges the roles of the two off-diagonal
        // entries and c^2 plays the part of the twist.
        let u = c * c;
        let ws = vec![
            LeftInverseSpec::PhiTilde { omega: ONE, swapped: true, twist: twist_of(u) },
            LeftInverseSpec::TetraFh {
                beta,
                h: RIIMapSpec::canonical(beta)?,
                swapped: true,
                twist: twist_of(u),
            },
        ];
        return Ok((Verdict::NonUnique, ws, None));
    }
    let note = "non-unique, but reaching the normalized frame of the closed-form witnesses \
                takes an ambient tetrablock automorphism outside the represented witness \
                families, so no witnesses are emitted"
        .to_string();
    Ok((Verdict::NonUnique, Vec::new(), Some(note)))
}

/// Decides left-inverse uniqueness for a geodesic of the tetrablock.
/// Degenerate triangular-slice parameters (C at 0 or 1) and automorphism
/// inner parts give explicit competing witnesses; a strictly contracting
/// inner part with C inside (0, 1) is unique. For the unitary-coefficient
/// form, the identity inner function is never unique, the strictly
/// contracting case is unique exactly on the manifold |c||d|(1+beta^2) =
/// beta, and parameters that push the curve across the royal surface are
/// rejected as invalid.
pub fn classify_e(spec: &EGeodesicSpec) -> Result<Classification> {
    if let Err(e) = spec.validate() {
        return Ok(invalid(e));
    }
    let geo = |lambda: Complex64| -> Result<SamplePoint> {
        let pt = spec.eval(lambda)?;
        Ok(SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 })
    };
    let (verdict, witnesses, note) = match spec {
        EGeodesicSpec::Form0 { omega1, omega2, c, psi } => form0_outcome(*omega1, *omega2, *c, psi),
        EGeodesicSpec::FormVa { beta, a, b, c, d, z } => match z {
            EFormVAZ::Identity => formva_identity_outcome(*beta, *a, *b, *c, *d)?,
            EFormVAZ::Strict { .. } => formva_strict_outcome(*beta, *a, *b, *c, *d)?,
        },
    };
    if matches!(verdict, Verdict::InvalidSpec { .. }) {
        return Ok(Classification { verdict, witnesses: Vec::new(), residual_report: Vec::new(), note });
    }
    finalize(&geo, &DomainTag::Tetrablock, verdict, witnesses, note)
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn rank_of(vecs: &[Vec<Complex64>]) -> usize {
    let scale = vecs.iter().map(|v| l2(v)).fold(0.0_f64, f64::max);
    if scale <= 0.0 {
        return 0;
    }
    let threshold = tol::RANK * scale;
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vecs {
        let mut rem = v.clone();
        // Two Gram-Schmidt passes keep the residual orthogonal enough for
        // a clean threshold decision.
        for _ in 0..2 {
            for b in &basis {
                let coef: Complex64 = b.iter().zip(&rem).map(|(bi, ri)| bi.conj() * ri).sum();
                for (ri, bi) in rem.iter_mut().zip(b) {
                    *ri -= coef * bi;
                }
            }
        }
        let nrm = l2(&rem);
        if nrm > threshold {
            for ri in rem.iter_mut() {
                *ri /= cr(nrm);
            }
            basis.push(rem);
        }
    }
    basis.len()
}

/// Sufficient uniqueness certificate for several geodesics of a convex
/// domain sharing the two points w = f(0) and z = f(sigma): if the
/// differences f^j(lambda) - f^n(lambda) reach rank n-1 at some grid
/// point, all left inverses of the listed geodesics agree, hence each is
/// unique among them. The test is one-sided; failure returns Inconclusive.
pub fn convex_uniqueness_certificate(
    geodesics: &[GeodesicMap<'_>],
    w: &[Complex64],
    sigma: Complex64,
    z: &[Complex64],
    lambda_grid: &[Complex64],
) -> Result<ConvexCertificate> {
    let n = geodesics.len();
    if n < 2 {
        return Err(Error::InvalidSpec(
            "the certificate needs at least two geodesics through the common pair".into(),
        ));
    }
    if lambda_grid.is_empty() {
        return Err(Error::InvalidSpec("empty evaluation grid".into()));
    }
    ensure_finite(sigma, "sigma")?;
    if sigma.norm() == 0.0 || sigma.norm() >= 1.0 {
        return Err(Error::InvalidSpec(format!(
            "sigma must lie in the punctured open disc, got |sigma| = {}",
            sigma.norm()
        )));
    }
    let dim = w.len();
    if dim == 0 || z.len() != dim {
        return Err(Error::InvalidSpec(format!(
            "common points must have matching positive dimension, got {} and {}",
            dim,
            z.len()
        )));
    }
    for (j, f) in geodesics.iter().enumerate() {
        for (at, target, name) in [(ZERO, w, "0"), (sigma, z, "sigma")] {
            let v = f(at)?;
            if v.len() != dim {
                return Err(Error::InvalidSpec(format!(
                    "geodesic {j} has dimension {}, expected {dim}",
                    v.len()
                )));
            }
            let err =
                v.iter().zip(target).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            if err > tol::ENDPOINT {
                return Err(Error::InvalidSpec(format!(
                    "geodesic {j} misses the common point at lambda = {name} by {err:.3e}"
                )));
            }
        }
    }
    let mut best_rank = 0usize;
    let mut best_lambda = lambda_grid[0];
    for &lam in lambda_grid {
        let last = geodesics[n - 1](lam)?;
        let mut vecs = Vec::with_capacity(n - 1);
        for f in &geodesics[..n - 1] {
            let v = f(lam)?;
            vecs.push(v.iter().zip(&last).map(|(a, b)| a - b).collect::<Vec<_>>());
        }
        let rank = rank_of(&vecs);
        if rank == n - 1 {
            return Ok(ConvexCertificate {
                witness_lambda: lam,
                rank,
                verdict: ConvexVerdict::Unique,
            });
        }
        if rank > best_rank {
            best_rank = rank;
            best_lambda = lam;
        }
    }
    Ok(ConvexCertificate {
        witness_lambda: best_lambda,
        rank: best_rank,
        verdict: ConvexVerdict::Inconclusive,
    })
}

/// Classifies the geodesic (lambda, 0) of the model Reinhardt domain
/// |z| + b |w|^k < 1. Every finite exponent admits the one-parameter family
/// z / (1 - beta w^k) of left inverses; the infinite-exponent model is the
/// bidisc-like case where only the projection survives.
pub fn reinhardt_classify(k: KExp, b: f64) -> Result<Classification> {
    let tag = DomainTag::ReinhardtModel { k, b };
    if let Err(e) = tag.validate() {
        return Ok(invalid(e));
    }
    let geo = |lambda: Complex64| -> Result<SamplePoint> {
        Ok(SamplePoint::Pair { z1: lambda, z2: ZERO })
    };
    let (verdict, witnesses) = match k {
        KExp::Infinity => {
            (Verdict::Unique, vec![LeftInverseSpec::ReinhardtBeta { beta: 0.0, k }])
        }
        KExp::Finite(_) => (
            Verdict::NonUnique,
            vec![
                LeftInverseSpec::ReinhardtBeta { beta: 0.0, k },
                LeftInverseSpec::ReinhardtBeta { beta: b / 2.0, k },
            ],
        ),
    };
    finalize(&geo, &tag, verdict, witnesses, None)
}

/// Three-point non-degeneracy: |sigma|^2 < max(|B(sigma)|, |B(-sigma)|)
/// for the degree-two symmetric Blaschke product B with center alpha.
pub fn nondeg_3pt(alpha: Complex64, sigma: Complex64) -> Result<bool> {
    ensure_finite(alpha, "alpha")?;
    ensure_finite(sigma, "sigma")?;
    if alpha.norm() == 0.0 || alpha.norm() >= 1.0 {
        return Err(Error::InvalidSpec(format!(
            "alpha must lie in the punctured open disc, got |alpha| = {}",
            alpha.norm()
        )));
    }
    if sigma.norm() == 0.0 || sigma.norm() >= 1.0 {
        return Err(Error::InvalidSpec(format!(
            "sigma must lie in the punctured open disc, got |sigma| = {}",
            sigma.norm()
        )));
    }
    let b = BlaschkeSpec::new(alpha)?;
    let m = b.eval(sigma).norm().max(b.eval(-sigma).norm());
    Ok(sigma.norm_sqr() < m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn blaschke_form(alpha: Complex64) -> G2GeodesicSpec {
        G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(alpha).unwrap() }
    }

    fn auto_form(tau: Complex64, alpha: Complex64) -> G2GeodesicSpec {
        G2GeodesicSpec::AutoForm { a: MoebiusSpec::new(tau, alpha).unwrap() }
    }

    fn assert_sound(cl: &Classification) {
        assert_eq!(cl.witnesses.len(), cl.residual_report.len());
        for r in &cl.residual_report {
            assert!(*r <= tol::IDENTITY, "residual {r} over tolerance");
        }
        if matches!(cl.verdict, Verdict::NonUnique) {
            assert!(cl.witnesses.len() >= 2 || cl.note.is_some());
        }
    }

    #[test]
    fn psi_admissible_examples() {
        assert!(psi_admissible(ONE, cr(0.5), ONE).unwrap());
        assert!(psi_admissible(ONE, cr(0.5), -ONE).unwrap());
        assert!(!psi_admissible(ONE, cr(0.5), I).unwrap());
    }

    #[test]
    fn admissible_set_transversal_pair() {
        let set = admissible_omega_set(ONE, cr(0.5), 4096).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.iter().any(|w| (w - ONE).norm() <= 1e-6));
        assert!(set.iter().any(|w| (w + ONE).norm() <= 1e-6));
    }

    #[test]
    fn admissible_set_tangency() {
        let set = admissible_omega_set(unit(PI / 3.0), cr(0.5), 4096).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn admissible_set_small_center() {
        let set = admissible_omega_set(ONE, cr(0.01), 4096).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn admissible_set_matches_circle_fixed_points() {
        let (tau, alpha) = (unit(PI / 6.0), cr(0.3));
        let set = admissible_omega_set(tau, alpha, 4096).unwrap();
        assert_eq!(set.len(), 2);
        let a = MoebiusSpec::new(tau, alpha).unwrap();
        match a.fixed_points() {
            FixedPoints::Pair(r1, r2) => {
                for w in &set {
                    let d = (w - r1).norm().min((w - r2).norm());
                    assert!(d <= 1e-6, "admissible point {w} far from fixed points");
                }
            }
            other => panic!("expected a circle fixed-point pair, got {other:?}"),
        }
    }

    #[test]
    fn royal_blaschke_nonunique() {
        let cl = classify_g2(&blaschke_form(ZERO)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 4);
        assert_sound(&cl);
    }

    #[test]
    fn flat_blaschke_nonunique() {
        let cl = classify_g2(&blaschke_form(ONE)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 5);
        assert_sound(&cl);
    }

    #[test]
    fn interior_blaschke_unique() {
        let cl = classify_g2(&blaschke_form(cr(0.3))).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert_eq!(cl.witnesses.len(), 1);
        assert_sound(&cl);

        let cl = classify_g2(&blaschke_form(c(0.2, -0.4))).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert_sound(&cl);
    }

    #[test]
    fn auto_strict_two_witnesses() {
        let cl = classify_g2(&auto_form(unit(PI / 6.0), cr(0.3))).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert_sound(&cl);
    }

    #[test]
    fn auto_tangency_closed_form() {
        let cl = classify_g2(&auto_form(unit(PI / 3.0), cr(0.5))).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert_eq!(cl.witnesses.len(), 1);
        assert!(matches!(cl.witnesses[0], LeftInverseSpec::G2Parabolic { .. }));
        assert!(cl.residual_report[0] <= 1e-9);
    }

    #[test]
    fn auto_off_manifold_invalid() {
        let cl = classify_g2(&auto_form(-ONE, cr(0.3))).unwrap();
        assert!(matches!(cl.verdict, Verdict::InvalidSpec { .. }));
        assert!(cl.witnesses.is_empty());
    }

    #[test]
    fn auto_verdict_matches_omega_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 10 {
            let tau = unit(rng.gen_range(0.0..TAU));
            let alpha = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.05..0.95));
            let margin = (ONE - tau).norm() - 2.0 * alpha.norm();
            if margin.abs() <= 1e-3 || margin > 0.0 {
                continue;
            }
            let cl = classify_g2(&auto_form(tau, alpha)).unwrap();
            let clusters = admissible_omega_set(tau, alpha, 4096).unwrap();
            assert_eq!(
                matches!(cl.verdict, Verdict::NonUnique),
                clusters.len() >= 2,
                "parity failed for tau = {tau}, alpha = {alpha}"
            );
            checked += 1;
        }
    }

    fn form0(
        w1: Complex64,
        w2: Complex64,
        cc: f64,
        psi: SelfMapSpec,
    ) -> EGeodesicSpec {
        EGeodesicSpec::Form0 { omega1: w1, omega2: w2, c: cc, psi }
    }

    #[test]
    fn form0_royal_three_witnesses() {
        let psi = SelfMapSpec::new(cr(0.7), 1, vec![]).unwrap();
        let cl = classify_e(&form0(ONE, ONE, 0.0, psi)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 3);
        assert_sound(&cl);
    }

    #[test]
    fn form0_flat_two_witnesses() {
        let psi = SelfMapSpec::constant(-ONE).unwrap();
        let cl = classify_e(&form0(unit(0.4), unit(-1.1), 1.0, psi)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert_sound(&cl);
    }

    #[test]
    fn form0_strict_unique() {
        // psi = 0.8 (lambda - 0.625)/(1 - 0.625 lambda), psi(0) = -0.5.
        let psi = SelfMapSpec::new(cr(0.8), 0, vec![cr(0.625)]).unwrap();
        let cl = classify_e(&form0(ONE, ONE, 0.5, psi)).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert_eq!(cl.witnesses.len(), 1);
        assert_sound(&cl);

        // Constant psi = -C is the inner part Z = 0, also strict.
        let psi = SelfMapSpec::constant(cr(-0.5)).unwrap();
        let cl = classify_e(&form0(unit(0.9), ONE, 0.5, psi)).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert_sound(&cl);
    }

    #[test]
    fn form0_automorphism_nonunique() {
        // psi = (lambda - 0.5)/(1 - 0.5 lambda), psi(0) = -0.5.
        let psi = SelfMapSpec::new(ONE, 0, vec![cr(0.5)]).unwrap();
        let cl = classify_e(&form0(ONE, ONE, 0.5, psi)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert_sound(&cl);

        // A rotated variant: psi = u (lambda - a)/(1 - conj(a) lambda) with
        // u a = C, u = e^{i 0.8}.
        let u = unit(0.8);
        let psi = SelfMapSpec::new(u, 0, vec![cr(0.3) * u.conj()]).unwrap();
        let cl = classify_e(&form0(unit(0.4), unit(2.2), 0.3, psi)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert_sound(&cl);
    }

    fn formva(
        beta: f64,
        a: Complex64,
        b: Complex64,
        cc: Complex64,
        d: Complex64,
        z: EFormVAZ,
    ) -> EGeodesicSpec {
        EGeodesicSpec::FormVa { beta, a, b, c: cc, d, z }
    }

    fn z_zero() -> EFormVAZ {
        EFormVAZ::Strict { w: SelfMapSpec::constant(ZERO).unwrap() }
    }

    #[test]
    fn formva_identity_four_witnesses() {
        let cl =
            classify_e(&formva(0.5, ONE, ZERO, ZERO, ONE, EFormVAZ::Identity)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 4);
        assert_sound(&cl);
    }

    #[test]
    fn formva_identity_tangent_pair() {
        // Im(conj(a) b) = 0.4 makes the contact parameter exactly 1 at
        // beta = 0.5: a single tangency event with two coordinate orders.
        let (a, b) = (cr(0.8f64.sqrt()), c(0.0, 0.2f64.sqrt()));
        let (cc, d) = (c(0.0, 0.2f64.sqrt()), cr(0.8f64.sqrt()));
        let cl = classify_e(&formva(0.5, a, b, cc, d, EFormVAZ::Identity)).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert_sound(&cl);
    }

    #[test]
    fn formva_identity_crossing_invalid() {
        // Im(conj(a) b) = 0.5 pushes the contact parameter to 1.25.
        let (a, b) = (cr(0.5f64.sqrt()), c(0.0, 0.5f64.sqrt()));
        let (cc, d) = (c(0.0, 0.5f64.sqrt()), cr(0.5f64.sqrt()));
        let cl = classify_e(&formva(0.5, a, b, cc, d, EFormVAZ::Identity)).unwrap();
        assert!(matches!(cl.verdict, Verdict::InvalidSpec { .. }));
    }

    #[test]
    fn formva_strict_two_witnesses() {
        let cl = classify_e(&formva(0.5, ONE, ZERO, ZERO, ONE, z_zero())).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert!(matches!(
            cl.witnesses[0],
            LeftInverseSpec::PhiTilde { swapped: false, twist: None, .. }
        ));
        assert!(matches!(
            cl.witnesses[1],
            LeftInverseSpec::TetraFh { swapped: false, twist: None, .. }
        ));
        assert_sound(&cl);
    }

    #[test]
    fn formva_strict_swapped_witnesses() {
        let cl = classify_e(&formva(0.5, ZERO, ONE, ONE, ZERO, z_zero())).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert!(matches!(
            cl.witnesses[0],
            LeftInverseSpec::PhiTilde { swapped: true, .. }
        ));
        assert_sound(&cl);
    }

    #[test]
    fn formva_strict_touching_unique() {
        let (rt2, rt8) = (cr(0.2f64.sqrt()), cr(0.8f64.sqrt()));
        let cl = classify_e(&formva(0.5, rt2, rt8, rt8, -rt2, z_zero())).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert!(cl.witnesses.is_empty());
        assert!(cl.note.is_some());
    }

    #[test]
    fn formva_strict_general_position() {
        let t: f64 = 0.1;
        let (co, si) = (cr(t.cos()), cr(t.sin()));
        let cl = classify_e(&formva(0.5, co, si, -si, co, z_zero())).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert!(cl.witnesses.is_empty());
        assert!(cl.note.is_some());
    }

    #[test]
    fn formva_strict_crossing_invalid() {
        let t = std::f64::consts::FRAC_PI_4;
        let (co, si) = (cr(t.cos()), cr(t.sin()));
        let cl = classify_e(&formva(0.5, co, si, -si, co, z_zero())).unwrap();
        assert!(matches!(cl.verdict, Verdict::InvalidSpec { .. }));
    }

    #[test]
    fn formva_verdict_phase_invariant() {
        let (u1, u2) = (unit(0.7), unit(-1.3));
        let base = classify_e(&formva(0.5, ONE, ZERO, ZERO, ONE, z_zero())).unwrap();
        let turned =
            classify_e(&formva(0.5, u1, ZERO, ZERO, u2, z_zero())).unwrap();
        assert_eq!(base.verdict, turned.verdict);
        assert_eq!(base.witnesses.len(), turned.witnesses.len());
        assert_sound(&turned);

        let base = classify_e(&formva(0.5, ONE, ZERO, ZERO, ONE, EFormVAZ::Identity)).unwrap();
        let turned =
            classify_e(&formva(0.5, u1, ZERO, ZERO, u2, EFormVAZ::Identity)).unwrap();
        assert_eq!(base.verdict, turned.verdict);
        assert_eq!(base.witnesses.len(), turned.witnesses.len());
    }

    fn disc_geodesic_pair() -> (GeodesicMap<'static>, GeodesicMap<'static>) {
        let f1: GeodesicMap<'static> = Box::new(|lam| Ok(vec![lam, ZERO]));
        let f2: GeodesicMap<'static> = Box::new(|lam| {
            let g = cr(0.5) * lam * (lam - cr(0.6)) / (ONE - cr(0.6) * lam);
            Ok(vec![lam, g])
        });
        (f1, f2)
    }

    #[test]
    fn convex_two_geodesics_unique() {
        let (f1, f2) = disc_geodesic_pair();
        let cert = convex_uniqueness_certificate(
            &[f1, f2],
            &[ZERO, ZERO],
            cr(0.6),
            &[cr(0.6), ZERO],
            &[cr(0.3)],
        )
        .unwrap();
        assert_eq!(cert.verdict, ConvexVerdict::Unique);
        assert_eq!(cert.rank, 1);
        assert!((cert.witness_lambda - cr(0.3)).norm() <= 1e-15);
    }

    #[test]
    fn convex_coincident_inconclusive() {
        let f1: GeodesicMap<'_> = Box::new(|lam| Ok(vec![lam, ZERO]));
        let f2: GeodesicMap<'_> = Box::new(|lam| Ok(vec![lam, ZERO]));
        let cert = convex_uniqueness_certificate(
            &[f1, f2],
            &[ZERO, ZERO],
            cr(0.6),
            &[cr(0.6), ZERO],
            &[cr(0.3), cr(-0.4), c(0.1, 0.5)],
        )
        .unwrap();
        assert_eq!(cert.verdict, ConvexVerdict::Inconclusive);
        assert_eq!(cert.rank, 0);
    }

    #[test]
    fn convex_three_geodesics_in_tridisc() {
        let bump = |lam: Complex64| cr(0.5) * lam * (lam - cr(0.6)) / (ONE - cr(0.6) * lam);
        let f1: GeodesicMap<'_> = Box::new(|lam| Ok(vec![lam, ZERO, ZERO]));
        let f2: GeodesicMap<'_> = Box::new(move |lam| Ok(vec![lam, bump(lam), ZERO]));
        let f3: GeodesicMap<'_> = Box::new(move |lam| Ok(vec![lam, ZERO, bump(lam)]));
        let cert = convex_uniqueness_certificate(
            &[f1, f2, f3],
            &[ZERO, ZERO, ZERO],
            cr(0.6),
            &[cr(0.6), ZERO, ZERO],
            &[cr(0.3)],
        )
        .unwrap();
        assert_eq!(cert.verdict, ConvexVerdict::Unique);
        assert_eq!(cert.rank, 2);
    }

    #[test]
    fn convex_endpoint_mismatch_rejected() {
        let (f1, f2) = disc_geodesic_pair();
        let err = convex_uniqueness_certificate(
            &[f1, f2],
            &[ZERO, ZERO],
            cr(0.5),
            &[cr(0.6), ZERO],
            &[cr(0.3)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn reinhardt_finite_nonunique() {
        let cl = reinhardt_classify(KExp::Finite(2), 1.0).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_eq!(cl.witnesses.len(), 2);
        assert!(matches!(
            cl.witnesses[1],
            LeftInverseSpec::ReinhardtBeta { beta, .. } if (beta - 0.5).abs() <= 1e-15
        ));
        assert_sound(&cl);

        let cl = reinhardt_classify(KExp::Finite(1), 0.5).unwrap();
        assert_eq!(cl.verdict, Verdict::NonUnique);
        assert_sound(&cl);
    }

    #[test]
    fn reinhardt_infinite_unique() {
        let cl = reinhardt_classify(KExp::Infinity, 1.0).unwrap();
        assert_eq!(cl.verdict, Verdict::Unique);
        assert_eq!(cl.witnesses.len(), 1);
        assert_sound(&cl);
    }

    #[test]
    fn reinhardt_invalid_parameters() {
        let cl = reinhardt_classify(KExp::Finite(2), 0.0).unwrap();
        assert!(matches!(cl.verdict, Verdict::InvalidSpec { .. }));
    }

    #[test]
    fn nondeg_examples() {
        assert!(nondeg_3pt(cr(0.3), cr(0.5)).unwrap());
        // alpha = sigma kills one factor; the test reduces to the other.
        assert!(nondeg_3pt(cr(0.3), cr(0.3)).unwrap());
        assert!(nondeg_3pt(c(0.0, 0.9), cr(0.9)).unwrap());
        assert!(nondeg_3pt(ZERO, cr(0.5)).is_err());
        assert!(nondeg_3pt(cr(0.3), ZERO).is_err());
    }

    #[test]
    fn classification_serde_shape() {
        let cl = classify_g2(&blaschke_form(cr(0.3))).unwrap();
        let v = serde_json::to_value(&cl).unwrap();
        assert_eq!(v["verdict"], serde_json::json!("unique"));
        assert!(v.get("note").is_none());
        let back: Classification = serde_json::from_value(v).unwrap();
        assert_eq!(back, cl);

        let cl = classify_g2(&auto_form(-ONE, cr(0.3))).unwrap();
        let v = serde_json::to_value(&cl).unwrap();
        assert!(v["verdict"].get("invalid_spec").is_some());
    }
}
