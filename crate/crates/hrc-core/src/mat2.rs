//! Fixed-size complex 2-vector and 2x2 matrix algebra.
//!
//! The two slots represent either the two propagation directions of the
//! ring cavity (port space) or the cosine/sine two-photon quadratures.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::HrcError;
use crate::Result;

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;

/// Complex 2-vector (field amplitudes or a quadrature pair).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub c0: C64,
    pub c1: C64,
}

/// Complex 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m00: C64,
    pub m01: C64,
    pub m10: C64,
    pub m11: C64,
}

impl Vec2 {
    pub fn new(c0: C64, c1: C64) -> Self {
        Vec2 { c0, c1 }
    }

    pub fn zero() -> Self {
        Vec2::new(C64::ZERO, C64::ZERO)
    }

    /// Squared Euclidean norm |c0|^2 + |c1|^2.
    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }
}

impl Mat2 {
    pub fn new(m00: C64, m01: C64, m10: C64, m11: C64) -> Self {
        Mat2 { m00, m01, m10, m11 }
    }

    pub fn identity() -> Self {
        Mat2::new(C64::ONE, C64::ZERO, C64::ZERO, C64::ONE)
    }

    pub fn zero() -> Self {
        Mat2::new(C64::ZERO, C64::ZERO, C64::ZERO, C64::ZERO)
    }

    pub fn diag(d0: C64, d1: C64) -> Self {
        Mat2::new(d0, C64::ZERO, C64::ZERO, d1)
    }

    /// Uniform scaling s * I.
    pub fn scalar(s: C64) -> Self {
        Mat2::diag(s, s)
    }

    pub fn det(&self) -> C64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.m00.conj(),
            self.m10.conj(),
            self.m01.conj(),
            self.m11.conj(),
        )
    }

    /// Largest entry magnitude (infinity-like norm, entrywise).
    pub fn max_abs(&self) -> f64 {
        self.m00
            .norm()
            .max(self.m01.norm())
            .max(self.m10.norm())
            .max(self.m11.norm())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 + o.m00,
            self.m01 + o.m01,
            self.m10 + o.m10,
            self.m11 + o.m11,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 - o.m00,
            self.m01 - o.m01,
            self.m10 - o.m10,
            self.m11 - o.m11,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.m00, -self.m01, -self.m10, -self.m11)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 * o.m00 + self.m01 * o.m10,
            self.m00 * o.m01 + self.m01 * o.m11,
            self.m10 * o.m00 + self.m11 * o.m10,
            self.m10 * o.m01 + self.m11 * o.m11,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m00 * v.c0 + self.m01 * v.c1,
            self.m10 * v.c0 + self.m11 * v.c1,
        )
    }
}

impl Mul<C64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: C64) -> Mat2 {
        Mat2::new(self.m00 * s, self.m01 * s, self.m10 * s, self.m11 * s)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.c0 + o.c0, self.c1 + o.c1)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.c0 - o.c0, self.c1 - o.c1)
    }
}

impl Mul<C64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: C64) -> Vec2 {
        Vec2::new(self.c0 * s, self.c1 * s)
    }
}

/// Pauli matrix sigma_1, sigma_2 or sigma_3.
pub fn pauli(index: u8) -> Result<Mat2> {
    let i = C64::I;
    match index {
        1 => Ok(Mat2::new(C64::ZERO, C64::ONE, C64::ONE, C64::ZERO)),
        2 => Ok(Mat2::new(C64::ZERO, -i, i, C64::ZERO)),
        3 => Ok(Mat2::new(C64::ONE, C64::ZERO, C64::ZERO, -C64::ONE)),
        _ => Err(HrcError::InvalidArgument("pauli index must be 1, 2 or 3")),
    }
}

/// Propagation matrix diag(e^{ikL1}, e^{ikL2}) for the two ring directions.
pub fn propagation_matrix(l1: f64, l2: f64, k: f64) -> Result<Mat2> {
    if !(l1 > 0.0 && l2 > 0.0) {
        return Err(HrcError::InvalidArgument("propagation lengths must be positive"));
    }
    Ok(Mat2::diag(
        (C64::I * (k * l1)).exp(),
        (C64::I * (k * l2)).exp(),
    ))
}

/// Mirror scattering matrix [[r, it], [it, r]].
pub fn mirror_matrix(r: f64, t: f64) -> Result<Mat2> {
    let sum = r * r + t * t;
    if sum > 1.0 + 1e-12 {
        return Err(HrcError::NonPhysicalMirror { sum });
    }
    let it = C64::I * t;
    Ok(Mat2::new(C64::from(r), it, it, C64::from(r)))
}

/// Relative singularity threshold for cofactor inversion.
fn eps_det(m: &Mat2) -> f64 {
    let n = m.max_abs();
    1e-14 * 1.0_f64.max(n * n)
}

/// Exact 2x2 cofactor inverse; errors when |det| is below the
/// conditioning threshold relative to the matrix magnitude.
pub fn invert2(m: &Mat2) -> Result<Mat2> {
    let det = m.det();
    let det_abs = det.norm();
    if det_abs <= eps_det(m) {
        return Err(HrcError::SingularMatrix { det_abs });
    }
    let inv = det.inv();
    Ok(Mat2::new(
        m.m11 * inv,
        -m.m01 * inv,
        -m.m10 * inv,
        m.m00 * inv,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: C64, b: C64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} != {b} (tol {tol})");
    }

    fn max_dev_from_identity(m: &Mat2) -> f64 {
        (*m - Mat2::identity()).max_abs()
    }

    #[test]
    fn pauli_matrices_match_definitions() {
        let s3 = pauli(3).unwrap();
        assert_eq!(s3.m00, C64::ONE);
        assert_eq!(s3.m11, -C64::ONE);
        assert_eq!(s3.m01, C64::ZERO);

        // involution
        let s1 = pauli(1).unwrap();
        assert_eq!(max_dev_from_identity(&(s1 * s1)), 0.0);

        // sigma_2 is anti-symmetric with purely imaginary off-diagonals
        let s2 = pauli(2).unwrap();
        assert_eq!(s2.m01, -s2.m10);
        assert_eq!(s2.m01.re, 0.0);
        assert_eq!(s2.m10.re, 0.0);

        assert!(pauli(0).is_err());
        assert!(pauli(4).is_err());
    }

    #[test]
    fn propagation_matrix_basics() {
        // zero phase
        let p = propagation_matrix(1.0, 2.0, 0.0).unwrap();
        assert_eq!(max_dev_from_identity(&p), 0.0);

        // half-wave phase: L1 = L2 = L/2, k = 2*pi/L -> -I
        let l = 0.4;
        let p = propagation_matrix(l / 2.0, l / 2.0, 2.0 * core::f64::consts::PI / l).unwrap();
        assert_close(p.m00, -C64::ONE, 1e-12);
        assert_close(p.m11, -C64::ONE, 1e-12);

        // unimodular determinant
        let p = propagation_matrix(0.1955, 0.1955, 4.05e6).unwrap();
        assert!((p.det().norm() - 1.0).abs() < 1e-12);

        assert!(propagation_matrix(0.0, 1.0, 1.0).is_err());
        assert!(propagation_matrix(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn mirror_matrix_basics() {
        let m = mirror_matrix(1.0, 0.0).unwrap();
        assert_eq!(max_dev_from_identity(&m), 0.0);

        let m = mirror_matrix(0.0, 1.0).unwrap();
        let is1 = pauli(1).unwrap() * C64::I;
        assert_eq!(m, is1);

        // lossless mirror is unitary
        let (r, t) = (0.6, 0.8);
        let m = mirror_matrix(r, t).unwrap();
        assert!(max_dev_from_identity(&(m * m.adjoint())) < 1e-12);

        assert!(mirror_matrix(0.9, 0.9).is_err());
    }

    #[test]
    fn invert2_basics() {
        let i = invert2(&Mat2::identity()).unwrap();
        assert_eq!(max_dev_from_identity(&i), 0.0);

        let d = invert2(&Mat2::diag(C64::from(2.0), C64::from(4.0))).unwrap();
        assert_eq!(d.m00, C64::from(0.5));
        assert_eq!(d.m11, C64::from(0.25));

        let singular = Mat2::new(C64::ONE, C64::from(2.0), C64::from(2.0), C64::from(4.0));
        assert!(matches!(
            invert2(&singular),
            Err(HrcError::SingularMatrix { .. })
        ));
    }

    #[test]
    fn invert2_roundtrip_seeded() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let e = |rng: &mut rand_chacha::ChaCha8Rng| {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            };
            let m = Mat2::new(e(&mut rng), e(&mut rng), e(&mut rng), e(&mut rng));
            if m.det().norm() < 1e-6 {
                continue;
            }
            let inv = invert2(&m).unwrap();
            assert!(max_dev_from_identity(&(m * inv)) < 1e-12);
            checked += 1;
        }
    }
}
