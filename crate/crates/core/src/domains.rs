//! Domain membership, royal varieties, the symmetrization and covering
//! maps, embeddings between the symmetrized bidisc and the tetrablock,
//! and seeded samplers for every supported domain.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{cr, ensure_finite, quadratic_roots, unit, ONE};
use crate::error::{Error, Result};
use crate::mat2::Mat2;

/// Point of the symmetrized bidisc, coordinates (s, p) = (sum, product).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointG2 {
    pub s: Complex64,
    pub p: Complex64,
}

impl PointG2 {
    pub fn new(s: Complex64, p: Complex64) -> Self {
        PointG2 { s, p }
    }
}

/// Point of the tetrablock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointE {
    pub x1: Complex64,
    pub x2: Complex64,
    pub x3: Complex64,
}

impl PointE {
    pub fn new(x1: Complex64, x2: Complex64, x3: Complex64) -> Self {
        PointE { x1, x2, x3 }
    }
}

/// Exponent of the Reinhardt model domain |z| + b|w|^k < 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KExp {
    Finite(u32),
    Infinity,
}

impl Serialize for KExp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KExp::Finite(k) => s.serialize_u32(*k),
            KExp::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for KExp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|k| u32::try_from(k).ok())
                .map(KExp::Finite)
                .ok_or_else(|| DeError::custom("k must be a positive integer or \"inf\"")),
            serde_json::Value::String(s) if s == "inf" => Ok(KExp::Infinity),
            _ => Err(DeError::custom("k must be a positive integer or \"inf\"")),
        }
    }
}

/// Which domain a point, sampler call, or verification report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "snake_case")]
pub enum DomainTag {
    Disc,
    Bidisc,
    Ball2,
    G2,
    Tetrablock,
    Rii,
    ReinhardtModel { k: KExp, b: f64 },
}

impl DomainTag {
    pub fn validate(&self) -> Result<()> {
        if let DomainTag::ReinhardtModel { k, b } = self {
            if !b.is_finite() || *b <= 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "Reinhardt model needs b > 0, got {b}"
                )));
            }
            if let KExp::Finite(k) = k {
                if *k == 0 {
                    return Err(Error::InvalidSpec("Reinhardt exponent k must be >= 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Stream id for the seeded sampler; distinct per domain so one seed
    /// yields independent, individually extendable streams.
    fn stream_id(&self) -> u64 {
        match self {
            DomainTag::Disc => 1,
            DomainTag::Bidisc => 2,
            DomainTag::Ball2 => 3,
            DomainTag::G2 => 4,
            DomainTag::Tetrablock => 5,
            DomainTag::Rii => 6,
            DomainTag::ReinhardtModel { .. } => 7,
        }
    }
}

/// One sampled point, tagged by shape rather than by domain: the bidisc,
/// the ball, and the Reinhardt model all produce coordinate pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplePoint {
    Disc {
        #[serde(with = "crate::complex::creim")]
        z: Complex64,
    },
    Pair {
        #[serde(with = "crate::complex::creim")]
        z1: Complex64,
        #[serde(with = "crate::complex::creim")]
        z2: Complex64,
    },
    G2 {
        #[serde(with = "crate::complex::creim")]
        s: Complex64,
        #[serde(with = "crate::complex::creim")]
        p: Complex64,
    },
    E {
        #[serde(with = "crate::complex::creim")]
        x1: Complex64,
        #[serde(with = "crate::complex::creim")]
        x2: Complex64,
        #[serde(with = "crate::complex::creim")]
        x3: Complex64,
    },
    Rii {
        #[serde(with = "crate::complex::creim")]
        z1: Complex64,
        #[serde(with = "crate::complex::creim")]
        a: Complex64,
        #[serde(with = "crate::complex::creim")]
        z2: Complex64,
    },
}

/// Both roots of lambda^2 - s lambda + p, the preimages of (s, p) under
/// the symmetrization map.
pub fn g2_roots(pt: PointG2) -> (Complex64, Complex64) {
    quadratic_roots(ONE, -pt.s, pt.p)
}

/// Membership in the symmetrized bidisc: both symmetrization preimages
/// lie strictly inside the disc. Boundary points count as outside.
pub fn in_g2(pt: PointG2) -> bool {
    if !pt.s.is_finite() || !pt.p.is_finite() {
        return false;
    }
    let (r1, r2) = g2_roots(pt);
    r1.norm() < 1.0 && r2.norm() < 1.0
}

/// Membership in the tetrablock: |x1 - conj(x2) x3| + |x2 - conj(x1) x3| + |x3|^2 < 1.
pub fn in_e(pt: PointE) -> bool {
    if !pt.x1.is_finite() || !pt.x2.is_finite() || !pt.x3.is_finite() {
        return false;
    }
    (pt.x1 - pt.x2.conj() * pt.x3).norm() + (pt.x2 - pt.x1.conj() * pt.x3).norm()
        + pt.x3.norm_sqr()
        < 1.0
}

/// Membership in the symmetric 2x2 matrix ball. Symmetry is a structural
/// requirement, not a numeric one, so asymmetric input is an error.
pub fn in_rii(m: &Mat2) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(m.operator_norm() < 1.0)
}

/// Symmetrization map of the bidisc.
pub fn pi_sym(l1: Complex64, l2: Complex64) -> PointG2 {
    PointG2::new(l1 + l2, l1 * l2)
}

/// Covering of the tetrablock by the matrix ball: m -> (m11, m22, det m).
pub fn pi_cover(m: &Mat2) -> PointE {
    PointE::new(m.m[0][0], m.m[1][1], m.det())
}

/// Embedding of the symmetrized bidisc into the tetrablock,
/// (s, p) -> (w s / 2, s / 2, w p) for unimodular w.
pub fn g2_embed_e(omega: Complex64, pt: PointG2) -> Result<PointE> {
    ensure_finite(omega, "embedding parameter")?;
    if (omega.norm() - 1.0).abs() > crate::tol::UNIMODULAR {
        return Err(Error::InvalidSpec(format!(
            "embedding parameter must be unimodular, got |omega| = {}",
            omega.norm()
        )));
    }
    let half = pt.s / cr(2.0);
    Ok(PointE::new(omega * half, half, omega * pt.p))
}

/// Projection of the tetrablock onto the symmetrized bidisc,
/// x -> (x1 + w x2, w x3) for |w| <= 1.
pub fn e_project_g2(omega: Complex64, pt: PointE) -> Result<PointG2> {
    ensure_finite(omega, "projection parameter")?;
    if omega.norm() > 1.0 + crate::tol::UNIMODULAR {
        return Err(Error::InvalidSpec(format!(
            "projection parameter must satisfy |omega| <= 1, got {}",
            omega.norm()
        )));
    }
    Ok(PointG2::new(pt.x1 + omega * pt.x2, omega * pt.x3))
}

/// Royal variety of the symmetrized bidisc: points (2 lambda, lambda^2),
/// i.e. s^2 = 4p, tested within `tol` together with membership.
pub fn on_royal_g2(pt: PointG2, tol: f64) -> bool {
    (pt.s * pt.s - cr(4.0) * pt.p).norm() <= tol && in_g2(pt)
}

/// Royal variety of the tetrablock: x1 x2 = x3, within `tol`, inside E.
pub fn on_royal_e(pt: PointE, tol: f64) -> bool {
    (pt.x1 * pt.x2 - pt.x3).norm() <= tol && in_e(pt)
}

/// Membership in the Reinhardt model |z| + b |w|^k < 1. The k = infinity
/// model is the monotone limit of the finite-k domains, the bidisc.
pub fn in_reinhardt(z: Complex64, w: Complex64, k: KExp, b: f64) -> bool {
    match k {
        KExp::Finite(k) => z.norm() + b * w.norm().powi(k as i32) < 1.0,
        KExp::Infinity => z.norm() < 1.0 && w.norm() < 1.0,
    }
}

const REJECTION_CAP: usize = 1_000_000;

/// Area-uniform point of the open disc: radius sqrt(u), angle 2 pi v.
/// Consumes exactly two draws, keeping sample streams prefix-stable.
fn draw_disc(rng: &mut ChaCha12Rng) -> Complex64 {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    unit(2.0 * std::f64::consts::PI * v) * cr(u.sqrt())
}

fn draw_rii(rng: &mut ChaCha12Rng) -> Result<Mat2> {
    for _ in 0..REJECTION_CAP {
        let m = Mat2::symmetric(draw_disc(rng), draw_disc(rng), draw_disc(rng));
        if m.operator_norm() < 1.0 {
            return Ok(m);
        }
    }
    Err(Error::Internal("matrix ball rejection sampler stalled".into()))
}

/// Deterministic sampler. Seed splitting rule: the 64-bit seed keys a
/// ChaCha12 generator and each domain reads its own stream id, so streams
/// for different domains are independent and `sample(tag, n, seed)` is a
/// prefix of `sample(tag, n + m, seed)`.
pub fn sample(tag: &DomainTag, n: usize, seed: u64) -> Result<Vec<SamplePoint>> {
    tag.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(tag.stream_id());
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(match tag {
            DomainTag::Disc => SamplePoint::Disc { z: draw_disc(&mut rng) },
            DomainTag::Bidisc => SamplePoint::Pair {
                z1: draw_disc(&mut rng),
                z2: draw_disc(&mut rng),
            },
            DomainTag::Ball2 => {
                let mut found = None;
                for _ in 0..REJECTION_CAP {
                    let z1 = draw_disc(&mut rng);
                    let z2 = draw_disc(&mut rng);
                    if z1.norm_sqr() + z2.norm_sqr() < 1.0 {
                        found = Some(SamplePoint::Pair { z1, z2 });
                        break;
                    }
                }
                found.ok_or_else(|| Error::Internal("ball rejection sampler stalled".into()))?
            }
            DomainTag::G2 => {
                let pt = pi_sym(draw_disc(&mut rng), draw_disc(&mut rng));
                SamplePoint::G2 { s: pt.s, p: pt.p }
            }
            DomainTag::Tetrablock => {
                let pt = pi_cover(&draw_rii(&mut rng)?);
                SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 }
            }
            DomainTag::Rii => {
                let m = draw_rii(&mut rng)?;
                SamplePoint::Rii { z1: m.m[0][0], a: m.m[0][1], z2: m.m[1][1] }
            }
            DomainTag::ReinhardtModel { k, b } => match k {
                KExp::Infinity => SamplePoint::Pair {
                    z1: draw_disc(&mut rng),
                    z2: draw_disc(&mut rng),
                },
                KExp::Finite(kk) => {
                    // Bounding product: |z| < 1, |w| < (1/b)^(1/k).
                    let rw = (1.0 / b).powf(1.0 / f64::from(*kk));
                    let mut found = None;
                    for _ in 0..REJECTION_CAP {
                        let z = draw_disc(&mut rng);
                        let w = draw_disc(&mut rng) * cr(rw);
                        if in_reinhardt(z, w, *k, *b) {
                            found = Some(SamplePoint::Pair { z1: z, z2: w });
                            break;
                        }
                    }
                    found.ok_or_else(|| {
                        Error::Internal("Reinhardt rejection sampler stalled".into())
                    })?
                }
            },
        });
    }
    Ok(out)
}

/// The sampled point as a complex coordinate vector, for generic output.
pub fn sample_coords(pt: &SamplePoint) -> Vec<Complex64> {
    match pt {
        SamplePoint::Disc { z } => vec![*z],
        SamplePoint::Pair { z1, z2 } => vec![*z1, *z2],
        SamplePoint::G2 { s, p } => vec![*s, *p],
        SamplePoint::E { x1, x2, x3 } => vec![*x1, *x2, *x3],
        SamplePoint::Rii { z1, a, z2 } => vec![*z1, *a, *z2],
    }
}

/// Sampled point reinterpreted in the ambient coordinates membership
/// predicates expect.
pub fn sample_in_domain(tag: &DomainTag, pt: &SamplePoint) -> bool {
    match (tag, pt) {
        (DomainTag::Disc, SamplePoint::Disc { z }) => z.norm() < 1.0,
        (DomainTag::Bidisc, SamplePoint::Pair { z1, z2 }) => z1.norm() < 1.0 && z2.norm() < 1.0,
        (DomainTag::Ball2, SamplePoint::Pair { z1, z2 }) => z1.norm_sqr() + z2.norm_sqr() < 1.0,
        (DomainTag::G2, SamplePoint::G2 { s, p }) => in_g2(PointG2::new(*s, *p)),
        (DomainTag::Tetrablock, SamplePoint::E { x1, x2, x3 }) => {
            in_e(PointE::new(*x1, *x2, *x3))
        }
        (DomainTag::Rii, SamplePoint::Rii { z1, a, z2 }) => {
            in_rii(&Mat2::symmetric(*z1, *a, *z2)).unwrap_or(false)
        }
        (DomainTag::ReinhardtModel { k, b }, SamplePoint::Pair { z1, z2 }) => {
            in_reinhardt(*z1, *z2, *k, *b)
        }
        _ => false,
    }
}
