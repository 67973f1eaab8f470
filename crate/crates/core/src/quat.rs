//! Complex quaternions `z = z₀ + z₁i + z₂j + z₃k` with `zₗ ∈ ℂ`.
//!
//! Two conjugations act on ℍ_ℂ: the quaternionic one `zᶜ = z₀ − z_v` and the
//! complex one `z̄`, which conjugates every coefficient. The complex squared
//! norm `zˢ = z zᶜ = z₀² + z₁² + z₂² + z₃²` is a complex number and can vanish
//! for nonzero `z`; such null quaternions (for instance `L = i + ıj`) are not
//! invertible.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{CRational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion<S> {
    /// Coefficients of `1, i, j, k`.
    pub c: [S; 4],
}

/// Exact complex quaternion over Gaussian rationals.
pub type CQuat = Quaternion<CRational>;
/// Floating mirror of [`CQuat`] for sampling and eigenvalue paths.
pub type FQuat = Quaternion<Complex64>;

impl<S: Scalar> Quaternion<S> {
    pub fn new(z0: S, z1: S, z2: S, z3: S) -> Self {
        Quaternion {
            c: [z0, z1, z2, z3],
        }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(s: S) -> Self {
        Self::new(s, S::zero(), S::zero(), S::zero())
    }

    pub fn unit_i() -> Self {
        Self::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn unit_j() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn unit_k() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    /// The null quaternion `L = i + ıj`.
    pub fn null_l() -> Self {
        Self::new(S::zero(), S::one(), S::imag_unit(), S::zero())
    }

    pub fn vector(v1: S, v2: S, v3: S) -> Self {
        Self::new(S::zero(), v1, v2, v3)
    }

    pub fn scalar_part(&self) -> &S {
        &self.c[0]
    }

    /// `z_v` as a pure quaternion.
    pub fn vector_part(&self) -> Self {
        Self::new(
            S::zero(),
            self.c[1].clone(),
            self.c[2].clone(),
            self.c[3].clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(S::is_zero)
    }

    pub fn is_pure_vector(&self) -> bool {
        self.c[0].is_zero()
    }

    /// Quaternionic conjugate `zᶜ = z₀ − z_v`.
    pub fn conj_quat(&self) -> Self {
        Self::new(
            self.c[0].clone(),
            -self.c[1].clone(),
            -self.c[2].clone(),
            -self.c[3].clone(),
        )
    }

    /// Complex conjugate `z̄`, coefficient-wise.
    pub fn conj_complex(&self) -> Self {
        Self::new(
            self.c[0].conj(),
            self.c[1].conj(),
            self.c[2].conj(),
            self.c[3].conj(),
        )
    }

    /// Formal bilinear product `⟨z_v, w_v⟩ = z₁w₁ + z₂w₂ + z₃w₃` (no conjugation).
    pub fn dot_vec(&self, w: &Self) -> S {
        self.c[1].clone() * w.c[1].clone()
            + self.c[2].clone() * w.c[2].clone()
            + self.c[3].clone() * w.c[3].clone()
    }

    /// Formal cross product of the vector parts.
    pub fn cross_vec(&self, w: &Self) -> Self {
        let (a1, a2, a3) = (&self.c[1], &self.c[2], &self.c[3]);
        let (b1, b2, b3) = (&w.c[1], &w.c[2], &w.c[3]);
        Self::vector(
            a2.clone() * b3.clone() - a3.clone() * b2.clone(),
            a3.clone() * b1.clone() - a1.clone() * b3.clone(),
            a1.clone() * b2.clone() - a2.clone() * b1.clone(),
        )
    }

    /// Complex squared norm `zˢ = z₀² + z₁² + z₂² + z₃²`.
    pub fn snorm(&self) -> S {
        self.c[0].clone() * self.c[0].clone() + self.dot_vec(self)
    }

    /// `z_vˢ = z₁² + z₂² + z₃²`.
    pub fn vector_snorm(&self) -> S {
        self.dot_vec(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.snorm().try_inv().ok_or(Error::ZeroComplexNorm)?;
        Ok(self.conj_quat().scale(&inv))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            s.clone() * self.c[0].clone(),
            s.clone() * self.c[1].clone(),
            s.clone() * self.c[2].clone(),
            s.clone() * self.c[3].clone(),
        )
    }

    fn mul_impl(&self, w: &Self) -> Self {
        // z₀w₀ − ⟨z_v,w_v⟩ + z₀w_v + w₀z_v + z_v × w_v
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &w.c;
        let m = |x: &S, y: &S| x.clone() * y.clone();
        Self::new(
            m(a0, b0) - m(a1, b1) - m(a2, b2) - m(a3, b3),
            m(a0, b1) + m(a1, b0) + m(a2, b3) - m(a3, b2),
            m(a0, b2) + m(a2, b0) + m(a3, b1) - m(a1, b3),
            m(a0, b3) + m(a3, b0) + m(a1, b2) - m(a2, b1),
        )
    }
}

impl CQuat {
    pub fn from_ints(c: [(i64, i64); 4]) -> Self {
        let f = |p: (i64, i64)| CRational::from_ints(p.0, p.1);
        Quaternion::new(f(c[0]), f(c[1]), f(c[2]), f(c[3]))
    }

    pub fn to_f64(&self) -> FQuat {
        Quaternion::new(
            self.c[0].to_c64(),
            self.c[1].to_c64(),
            self.c[2].to_c64(),
            self.c[3].to_c64(),
        )
    }

    /// All four coefficients are real.
    pub fn is_real(&self) -> bool {
        self.c.iter().all(CRational::is_real)
    }
}

impl FQuat {
    pub fn re_vector(&self) -> [f64; 3] {
        [self.c[1].re, self.c[2].re, self.c[3].re]
    }

    pub fn im_vector(&self) -> [f64; 3] {
        [self.c[1].im, self.c[2].im, self.c[3].im]
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> Mul for Quaternion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: &'a Quaternion<S>) -> Quaternion<S> {
        self.mul_impl(rhs)
    }
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Self::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<'a, S: Scalar> Add<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn add(self, rhs: &'a Quaternion<S>) -> Quaternion<S> {
        self.clone() + rhs.clone()
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Self::new(a0 - b0, a1 - b1, a2 - b2, a3 - b3)
    }
}

impl<'a, S: Scalar> Sub<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn sub(self, rhs: &'a Quaternion<S>) -> Quaternion<S> {
        self.clone() - rhs.clone()
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        Self::new(-a0, -a1, -a2, -a3)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}]",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

impl<S: fmt::Debug> fmt::Debug for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{:?}", self.c)
    }
}
