//! 2x2 complex matrices with the closed-form spectral helpers the matrix
//! ball needs: operator norm, Hermitian psd square root, inverse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{cr, ensure_finite, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tol;

/// Dense 2x2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    #[serde(with = "crate::complex::creim_mat2")]
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Mat2 { m: [[m11, m12], [m21, m22]] }
    }

    /// Symmetric matrix from diagonal `z1, z2` and off-diagonal `a`.
    pub fn symmetric(z1: Complex64, a: Complex64, z2: Complex64) -> Self {
        Mat2::new(z1, a, a, z2)
    }

    pub fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn validate_finite(&self) -> Result<()> {
        for row in &self.m {
            for &z in row {
                ensure_finite(z, "matrix entry")?;
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        let scale = self
            .m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        if d.norm() <= 1e-14 * scale * scale {
            return Err(Error::Singular(format!("det = {d}")));
        }
        Ok(Mat2::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        ))
    }

    /// Exact equality of the two off-diagonal entries.
    pub fn is_symmetric(&self) -> bool {
        self.m[0][1] == self.m[1][0]
    }

    /// Average the off-diagonal entries when they agree within `tol`,
    /// restoring exact symmetry after a float-perturbed computation.
    pub fn symmetrize(&self, tol: f64) -> Result<Mat2> {
        let gap = (self.m[0][1] - self.m[1][0]).norm();
        if gap > tol {
            return Err(Error::NotSymmetric);
        }
        let a = (self.m[0][1] + self.m[1][0]) / cr(2.0);
        Ok(Mat2::symmetric(self.m[0][0], a, self.m[1][1]))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.adjoint())
            .m
            .iter()
            .flatten()
            .all(|z| z.norm() <= tol)
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Hermiticity is the
    /// caller's responsibility; only the Hermitian part is read.
    fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let c = self.m[1][1].re;
        let b = (self.m[0][1] + self.m[1][0].conj()) / cr(2.0);
        let gap = ((a - c).powi(2) + 4.0 * b.norm_sqr()).sqrt();
        (((a + c) - gap) / 2.0, ((a + c) + gap) / 2.0)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let gram = self.adjoint().mul(self);
        let (_, hi) = gram.hermitian_eigenvalues();
        hi.max(0.0).sqrt()
    }

    /// Hermitian psd square root via closed-form spectral decomposition.
    /// Rejects inputs that are not Hermitian or have an eigenvalue below
    /// the psd tolerance; small negative eigenvalues are clamped to zero.
    pub fn psd_sqrt(&self) -> Result<Mat2> {
        self.validate_finite()?;
        let scale = self
            .m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        if !self.is_hermitian(tol::MATRIX * scale) {
            return Err(Error::NotHermitian);
        }
        let (lo, hi) = self.hermitian_eigenvalues();
        if lo < -tol::MATRIX * scale {
            return Err(Error::NotPsd);
        }
        let lo = lo.max(0.0);
        let hi = hi.max(0.0);
        if hi - lo <= 1e-15 * scale {
            // Near-scalar matrix.
            let s = ((lo + hi) / 2.0).sqrt();
            return Ok(Mat2::new(cr(s), ZERO, ZERO, cr(s)));
        }
        // Spectral projector onto the top eigenvalue: P = (M - lo I) / (hi - lo).
        let p = self
            .sub(&Mat2::identity().scale(cr(lo)))
            .scale(cr(1.0 / (hi - lo)));
        let q = Mat2::identity().sub(&p);
        Ok(p.scale(cr(hi.sqrt())).add(&q.scale(cr(lo.sqrt()))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{c, unit};
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn mat_close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        a.sub(b).m.iter().flatten().all(|z| z.norm() <= tol)
    }

    fn random_mat(rng: &mut ChaCha12Rng) -> Mat2 {
        Mat2::new(
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    }

    #[test]
    fn operator_norm_offdiagonal_beta() {
        let b = Mat2::symmetric(ZERO, cr(0.5), ZERO);
        assert!((b.operator_norm() - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn operator_norm_matches_power_iteration() {
        // Independent oracle: power iteration on M* M.
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for _ in 0..100 {
            let m = random_mat(&mut rng);
            let gram = m.adjoint().mul(&m);
            let mut v = [c(1.0, 0.3), c(-0.2, 0.8)];
            for _ in 0..600 {
                let w = [
                    gram.m[0][0] * v[0] + gram.m[0][1] * v[1],
                    gram.m[1][0] * v[0] + gram.m[1][1] * v[1],
                ];
                let n = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
                if n < 1e-300 {
                    break;
                }
                v = [w[0] / cr(n), w[1] / cr(n)];
            }
            let gv = [
                gram.m[0][0] * v[0] + gram.m[0][1] * v[1],
                gram.m[1][0] * v[0] + gram.m[1][1] * v[1],
            ];
            let rayleigh = (v[0].conj() * gv[0] + v[1].conj() * gv[1]).re;
            let power = rayleigh.max(0.0).sqrt();
            assert!(
                (m.operator_norm() - power).abs() <= 1e-7 * power.max(1.0),
                "closed form {} vs power iteration {power}",
                m.operator_norm()
            );
        }
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..200 {
            let m = random_mat(&mut rng);
            // M* M is Hermitian psd by construction.
            let gram = m.adjoint().mul(&m);
            let root = gram.psd_sqrt().unwrap();
            assert!(root.is_hermitian(1e-12));
            assert!(mat_close(&root.mul(&root), &gram, 1e-12));
            let (lo, _) = root.hermitian_eigenvalues();
            assert!(lo >= -1e-13);
        }
    }

    #[test]
    fn psd_sqrt_rejects_bad_inputs() {
        let not_herm = Mat2::new(ONE, cr(0.5), cr(0.2), ONE);
        assert_eq!(not_herm.psd_sqrt(), Err(Error::NotHermitian));
        let neg = Mat2::new(cr(-1.0), ZERO, ZERO, ONE);
        assert_eq!(neg.psd_sqrt(), Err(Error::NotPsd));
    }

    #[test]
    fn psd_sqrt_scalar_and_zero() {
        assert!(mat_close(&Mat2::zero().psd_sqrt().unwrap(), &Mat2::zero(), 1e-15));
        let m = Mat2::identity().scale(cr(4.0));
        assert!(mat_close(
            &m.psd_sqrt().unwrap(),
            &Mat2::identity().scale(cr(2.0)),
            1e-12
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..100 {
            let m = random_mat(&mut rng);
            if m.det().norm() < 1e-2 {
                continue;
            }
            let inv = m.inverse().unwrap();
            assert!(mat_close(&m.mul(&inv), &Mat2::identity(), 1e-12));
        }
        assert!(Mat2::new(ONE, ONE, ONE, ONE).inverse().is_err());
    }

    #[test]
    fn symmetrize_behaviour() {
        let m = Mat2::new(ONE, cr(0.5 + 1e-14), cr(0.5), ONE);
        let s = m.symmetrize(1e-12).unwrap();
        assert!(s.is_symmetric());
        let bad = Mat2::new(ONE, cr(0.6), cr(0.5), ONE);
        assert_eq!(bad.symmetrize(1e-12), Err(Error::NotSymmetric));
    }

    #[test]
    fn adjoint_and_transpose() {
        let m = Mat2::new(c(1.0, 2.0), c(3.0, -1.0), c(0.0, 4.0), c(-2.0, 0.5));
        let adj = m.adjoint();
        assert_eq!(adj.m[0][1], c(0.0, -4.0));
        assert_eq!(adj.m[1][0], c(3.0, 1.0));
        assert_eq!(m.transpose().m[0][1], c(0.0, 4.0));
    }

    #[test]
    fn unitary_congruence_preserves_norm() {
        // x -> U x U^T preserves the operator norm for unitary U.
        let theta = 0.7f64;
        let u = Mat2::new(
            cr(theta.cos()),
            cr(-theta.sin()),
            cr(theta.sin()),
            cr(theta.cos()),
        );
        let x = Mat2::symmetric(cr(0.3), c(0.1, 0.2), unit(1.3) * cr(0.4));
        let y = u.mul(&x).mul(&u.transpose());
        assert!((x.operator_norm() - y.operator_norm()).abs() <= 1e-12);
    }
}
