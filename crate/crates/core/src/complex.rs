//! Scalar layer: validated Moebius maps, Blaschke factors, the Poincare
//! distance and small polynomial solvers.
//!
//! Every spec type validates its numeric constraints at construction and
//! after deserialization; evaluation assumes a validated spec.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// JSON shape for complex scalars: objects `{"re": x, "im": y}`.  Input
/// also accepts a bare number as a real and an `[re, im]` pair.  Every
/// serializable spec field of complex type routes through this module (or
/// its option, vector and matrix variants below).
pub mod creim {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Map {
            re: f64,
            #[serde(default)]
            im: f64,
        },
        Real(f64),
        Seq([f64; 2]),
    }

    impl From<Repr> for Complex64 {
        fn from(r: Repr) -> Complex64 {
            match r {
                Repr::Map { re, im } => Complex64::new(re, im),
                Repr::Real(re) => Complex64::new(re, 0.0),
                Repr::Seq([re, im]) => Complex64::new(re, im),
            }
        }
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReIm { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        Ok(Repr::deserialize(d)?.into())
    }

    /// Transparent wrapper reused by the option, vector and matrix helpers.
    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    pub struct CWrap(#[serde(with = "self")] pub Complex64);
}

pub mod creim_opt {
    use super::creim::CWrap;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        z: &Option<Complex64>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        z.map(CWrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Complex64>, D::Error> {
        Ok(Option::<CWrap>::deserialize(d)?.map(|w| w.0))
    }
}

pub mod creim_vec {
    use super::creim::CWrap;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Complex64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|z| CWrap(*z)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<CWrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

pub mod creim_mat2 {
    use super::creim::CWrap;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        m: &[[Complex64; 2]; 2],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let rows: [[CWrap; 2]; 2] = [
            [CWrap(m[0][0]), CWrap(m[0][1])],
            [CWrap(m[1][0]), CWrap(m[1][1])],
        ];
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<[[Complex64; 2]; 2], D::Error> {
        let rows = <[[CWrap; 2]; 2]>::deserialize(d)?;
        Ok([
            [rows[0][0].0, rows[0][1].0],
            [rows[1][0].0, rows[1][1].0],
        ])
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Unit-circle point for a given angle.
pub fn unit(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

pub fn ensure_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{what} must be finite, got {z}")))
    }
}

pub fn ensure_finite_real(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{what} must be finite, got {x}")))
    }
}

pub fn ensure_unimodular(z: Complex64, what: &str) -> Result<()> {
    ensure_finite(z, what)?;
    if (z.norm() - 1.0).abs() <= tol::UNIMODULAR {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!(
            "{what} must be unimodular, got |{z}| = {}",
            z.norm()
        )))
    }
}

pub fn ensure_in_disc(z: Complex64, what: &str) -> Result<()> {
    ensure_finite(z, what)?;
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!(
            "{what} must lie in the open unit disc, got |{z}| = {}",
            z.norm()
        )))
    }
}

/// Poincare distance on the unit disc, `atanh` of the Moebius pseudodistance.
/// Both arguments must lie strictly inside the disc.
pub fn poincare_distance(l1: Complex64, l2: Complex64) -> Result<f64> {
    for (z, name) in [(l1, "first point"), (l2, "second point")] {
        ensure_finite(z, name)?;
        if z.norm() >= 1.0 {
            return Err(Error::DomainError(format!(
                "{name} must lie in the open unit disc, got |{z}| = {}",
                z.norm()
            )));
        }
    }
    let m = (l1 - l2) / (ONE - l2.conj() * l1);
    Ok(m.norm().atanh())
}

/// Both roots of `a x^2 + b x + c = 0` in a cancellation-safe order.
/// `a` must be nonzero; callers handle the linear case themselves.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = b * b - cr(4.0) * a * c;
    let sq = disc.sqrt();
    // Pick the sign that avoids cancellation in b +/- sq.
    let q = if (b.conj() * sq).re >= 0.0 {
        -(b + sq) / cr(2.0)
    } else {
        -(b - sq) / cr(2.0)
    };
    if q.norm() > 0.0 {
        (q / a, c / q)
    } else {
        ((-b + sq) / (cr(2.0) * a), (-b - sq) / (cr(2.0) * a))
    }
}

/// The unique root of `a x^2 + b x + c = 0` inside the open unit disc.
/// `a` may be zero (linear case). Roots on the boundary do not count as
/// inside. Errors: `NoRootInDisc`, `TwoRootsInDisc`.
pub fn quad_root_in_disc(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    for (z, name) in [(a, "a"), (b, "b"), (c, "c")] {
        ensure_finite(z, name)?;
    }
    let scale = a.norm().max(b.norm()).max(c.norm());
    if a.norm() <= f64::EPSILON * scale {
        // Linear equation b x + c = 0.
        if b.norm() <= f64::EPSILON * scale {
            return Err(Error::NoRootInDisc);
        }
        let r = -c / b;
        return if r.norm() < 1.0 {
            Ok(r)
        } else {
            Err(Error::NoRootInDisc)
        };
    }
    let (r1, r2) = quadratic_roots(a, b, c);
    if (b * b - cr(4.0) * a * c).norm() <= tol::DOUBLE_ROOT * scale * scale {
        // Double root counts once.
        let mid = (r1 + r2) / cr(2.0);
        return if mid.norm() < 1.0 {
            Ok(mid)
        } else {
            Err(Error::NoRootInDisc)
        };
    }
    match (r1.norm() < 1.0, r2.norm() < 1.0) {
        (true, false) => Ok(r1),
        (false, true) => Ok(r2),
        (true, true) => Err(Error::TwoRootsInDisc),
        (false, false) => Err(Error::NoRootInDisc),
    }
}

/// Fixed-point structure of a Moebius self-map of the disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FixedPoints {
    /// The map is the identity; every point is fixed.
    Identity,
    /// Rotation case alpha = 0, tau != 1: the only finite fixed point is 0.
    Single(Complex64),
    /// Two distinct fixed points.
    Pair(Complex64, Complex64),
    /// One double fixed point (parabolic when it lies on the circle).
    Double(Complex64),
}

/// Disc automorphism `a(lambda) = tau (lambda - alpha) / (1 - conj(alpha) lambda)`
/// with `|tau| = 1` and `|alpha| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusSpec {
    #[serde(with = "creim")]
    pub tau: Complex64,
    #[serde(with = "creim")]
    pub alpha: Complex64,
}

impl MoebiusSpec {
    pub fn new(tau: Complex64, alpha: Complex64) -> Result<Self> {
        let spec = MoebiusSpec { tau, alpha };
        spec.validate()?;
        Ok(spec)
    }

    pub fn identity() -> Self {
        MoebiusSpec { tau: ONE, alpha: ZERO }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_unimodular(self.tau, "tau")?;
        ensure_in_disc(self.alpha, "alpha")
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        self.tau * (lambda - self.alpha) / (ONE - self.alpha.conj() * lambda)
    }

    /// Closed-form inverse, again a disc automorphism.
    pub fn inverse(&self) -> MoebiusSpec {
        MoebiusSpec {
            tau: self.tau.conj(),
            alpha: -self.tau * self.alpha,
        }
    }

    /// Composition `self(other(lambda))` renormalized to spec form.
    pub fn compose(&self, other: &MoebiusSpec) -> Result<MoebiusSpec> {
        let frac = self.to_frac().compose(&other.to_frac());
        frac.into_moebius()
    }

    pub fn to_frac(&self) -> MoebiusFrac {
        MoebiusFrac {
            a: self.tau,
            b: -self.tau * self.alpha,
            c: -self.alpha.conj(),
            d: ONE,
        }
    }

    /// Solutions of `a(lambda) = lambda`, the roots of
    /// `conj(alpha) lambda^2 + (tau - 1) lambda - tau alpha = 0`.
    pub fn fixed_points(&self) -> FixedPoints {
        if self.alpha.norm() == 0.0 {
            return if (self.tau - ONE).norm() <= tol::UNIMODULAR {
                FixedPoints::Identity
            } else {
                // Rotation: fixed points are 0 and infinity.
                FixedPoints::Single(ZERO)
            };
        }
        let a = self.alpha.conj();
        let b = self.tau - ONE;
        let cc = -self.tau * self.alpha;
        let (r1, r2) = quadratic_roots(a, b, cc);
        let scale = a.norm().max(b.norm()).max(cc.norm()).max(1.0);
        if (b * b - cr(4.0) * a * cc).norm() <= tol::DOUBLE_ROOT * scale * scale {
            FixedPoints::Double((r1 + r2) / cr(2.0))
        } else {
            FixedPoints::Pair(r1, r2)
        }
    }
}

/// General linear-fractional map `(a z + b) / (c z + d)`. Used for derived
/// compositions; carries no self-map constraint of its own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusFrac {
    #[serde(with = "creim")]
    pub a: Complex64,
    #[serde(with = "creim")]
    pub b: Complex64,
    #[serde(with = "creim")]
    pub c: Complex64,
    #[serde(with = "creim")]
    pub d: Complex64,
}

impl MoebiusFrac {
    pub fn identity() -> Self {
        MoebiusFrac { a: ONE, b: ZERO, c: ZERO, d: ONE }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = self.c * z + self.d;
        let scale = self.c.norm().max(self.d.norm()).max(1.0);
        if den.norm() <= 1e-14 * scale {
            return Err(Error::DomainError(format!(
                "linear-fractional map has a pole at {z}"
            )));
        }
        Ok((self.a * z + self.b) / den)
    }

    /// Matrix composition: `self(other(z))`.
    pub fn compose(&self, other: &MoebiusFrac) -> MoebiusFrac {
        MoebiusFrac {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Inverse map; valid when the determinant is nonzero.
    pub fn inverse(&self) -> MoebiusFrac {
        MoebiusFrac { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Renormalize to `MoebiusSpec` form. Fails unless the map is a disc
    /// automorphism to working precision.
    pub fn into_moebius(self) -> Result<MoebiusSpec> {
        if self.det().norm() <= 1e-14 * self.a.norm().max(self.d.norm()).max(1.0) {
            return Err(Error::Singular("degenerate linear-fractional map".into()));
        }
        if self.a.norm() == 0.0 {
            return Err(Error::InvalidSpec(
                "linear-fractional map sends a disc point to infinity".into(),
            ));
        }
        let alpha = -self.b / self.a;
        if alpha.norm() >= 1.0 {
            return Err(Error::InvalidSpec(format!(
                "zero of the map lies outside the open disc: |{alpha}| >= 1"
            )));
        }
        let at_one = self.eval(ONE)?;
        let tau = at_one * (ONE - alpha.conj()) / (ONE - alpha);
        if (tau.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "map is not a disc automorphism: derived |tau| = {}",
                tau.norm()
            )));
        }
        // Snap to exact unimodularity so the spec invariant holds downstream.
        let tau = tau / cr(tau.norm());
        Ok(MoebiusSpec { tau, alpha })
    }
}

/// Degree-two Blaschke factor `B(lambda) = lambda (lambda - alpha) / (1 - conj(alpha) lambda)`
/// with `alpha` in the open disc, or the boundary value `alpha = 1` where the
/// inner factor collapses and `B(lambda) = -lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeSpec {
    #[serde(with = "creim")]
    pub alpha: Complex64,
}

impl BlaschkeSpec {
    pub fn new(alpha: Complex64) -> Result<Self> {
        let spec = BlaschkeSpec { alpha };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.alpha, "alpha")?;
        if self.alpha.norm() < 1.0 || self.is_boundary() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "alpha must lie in the open disc or equal 1, got {}",
                self.alpha
            )))
        }
    }

    /// True for the collapsed boundary parameter alpha = 1.
    pub fn is_boundary(&self) -> bool {
        self.alpha == ONE
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        if self.is_boundary() {
            // (lambda - 1) / (1 - lambda) = -1 exactly, so B(lambda) = -lambda.
            return -lambda;
        }
        lambda * (lambda - self.alpha) / (ONE - self.alpha.conj() * lambda)
    }
}

/// All complex roots of `coeffs[0] + coeffs[1] x + ... + coeffs[n] x^n`,
/// via Durand-Kerner iteration. Intended for the small (degree <= 4)
/// polynomials arising in witness construction.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(Error::InvalidSpec("zero polynomial".into()));
    }
    let mut top = coeffs.len();
    while top > 0 && coeffs[top - 1].norm() <= 1e-300 {
        top -= 1;
    }
    let deg = top.saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs[..deg].iter().map(|&z| z / lead).collect();

    let seed = c(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut v = ONE;
        // Horner on the monic polynomial x^deg + sum monic[k] x^k.
        for k in (0..deg).rev() {
            v = v * x + monic[k];
        }
        v
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = ONE;
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                // Perturb coincident iterates and continue.
                roots[i] += c(1e-8, 1e-8);
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    Ok(roots)
}
