//! Holomorphic self maps of the disc in factored form: a scale times a
//! power of the variable times finitely many Blaschke factors. The grammar
//! is closed under the operations the geodesic forms need and makes the
//! structural predicates (constant, automorphism) exact instead of numeric.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{ensure_finite, ONE};
use crate::error::{Error, Result};
use crate::tol;

/// c * lambda^m * prod_i (lambda - a_i) / (1 - conj(a_i) lambda),
/// with |c| <= 1 and every a_i in the open disc. Maps the closed disc
/// into the closed disc; sup norm over the disc is exactly |c|.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfMapSpec {
    #[serde(with = "crate::complex::creim")]
    pub scale: Complex64,
    #[serde(default)]
    pub zero_order: u32,
    #[serde(default, with = "crate::complex::creim_vec")]
    pub factors: Vec<Complex64>,
}

impl SelfMapSpec {
    pub fn new(scale: Complex64, zero_order: u32, factors: Vec<Complex64>) -> Result<Self> {
        let spec = SelfMapSpec { scale, zero_order, factors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        SelfMapSpec::new(c, 0, Vec::new())
    }

    /// lambda -> c lambda for |c| <= 1.
    pub fn rotation(c: Complex64) -> Result<Self> {
        SelfMapSpec::new(c, 1, Vec::new())
    }

    /// Single Blaschke factor (lambda - a) / (1 - conj(a) lambda).
    pub fn blaschke_factor(a: Complex64) -> Result<Self> {
        SelfMapSpec::new(ONE, 0, vec![a])
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.scale, "self map scale")?;
        if self.scale.norm() > 1.0 + tol::UNIMODULAR {
            return Err(Error::InvalidSpec(format!(
                "self map scale must satisfy |c| <= 1, got |c| = {}",
                self.scale.norm()
            )));
        }
        for &a in &self.factors {
            ensure_finite(a, "Blaschke factor zero")?;
            if a.norm() >= 1.0 {
                return Err(Error::InvalidSpec(format!(
                    "Blaschke factor zero must lie in the open disc, got |a| = {}",
                    a.norm()
                )));
            }
        }
        Ok(())
    }

    /// Well defined on the closed disc: the only denominator poles lie at
    /// 1/conj(a_i), strictly outside.
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        let mut v = self.scale * lambda.powu(self.zero_order);
        for &a in &self.factors {
            v *= (lambda - a) / (ONE - a.conj() * lambda);
        }
        v
    }

    /// Degree as a finite Blaschke product (zero count with multiplicity).
    pub fn degree(&self) -> usize {
        self.zero_order as usize + self.factors.len()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_zero_constant(&self) -> bool {
        self.is_constant() && self.scale.norm() == 0.0
    }

    pub fn is_unimodular_constant(&self) -> bool {
        self.is_constant() && (self.scale.norm() - 1.0).abs() <= tol::UNIMODULAR
    }

    /// Disc automorphism: unimodular scale and a single zero.
    pub fn is_automorphism(&self) -> bool {
        (self.scale.norm() - 1.0).abs() <= tol::UNIMODULAR && self.degree() == 1
    }

    /// Supremum of |value| over the closed disc. Blaschke factors and the
    /// monomial are unimodular on the boundary, so this is exactly |c|.
    pub fn sup_norm(&self) -> f64 {
        self.scale.norm()
    }

    pub fn at_zero(&self) -> Complex64 {
        self.eval(Complex64::new(0.0, 0.0))
    }
}
