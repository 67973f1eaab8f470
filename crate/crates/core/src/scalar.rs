//! Gaussian rationals `a + ıb` with `a, b ∈ ℚ`, and the [`Scalar`] trait
//! shared with `Complex64` so quaternions and matrices can be written once.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field shared by the exact and floating paths.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The complex unit ı.
    fn imag_unit() -> Self;
    fn is_zero(&self) -> bool;
    /// Complex conjugate.
    fn conj(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CRational::new(rat(re, 1), rat(im, 1))
    }

    /// `(rn/rd) + ı(in/id)`.
    pub fn from_fracs(rn: i64, rd: i64, in_: i64, id: i64) -> Self {
        CRational::new(rat(rn, rd), rat(in_, id))
    }

    pub fn real(re: BigRational) -> Self {
        CRational::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        CRational::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|²`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CRational::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CRational::from_ints(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Exact square root in ℚ(ı), if one exists. Of the two roots the one
    /// with positive real part (or positive imaginary part when the real
    /// part vanishes) is returned.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero_value() {
            return Some(self.clone());
        }
        // (x + ıy)² = a + ıb  ⇒  x² = (a + |w|)/2, y² = (|w| − a)/2.
        let modulus = sqrt_rational(&self.norm_sqr())?;
        let two = rat(2, 1);
        let x2 = (&self.re + &modulus) / &two;
        let y2 = (&modulus - &self.re) / &two;
        let x = sqrt_rational(&x2)?;
        let mut y = sqrt_rational(&y2)?;
        if x.is_zero() {
            // purely imaginary root: choose y > 0
            let cand = CRational::new(x.clone(), y.clone());
            if &(&cand * &cand) == self {
                return Some(cand);
            }
            return None;
        }
        // 2xy = b fixes the sign of y for x > 0
        if (&x * &y * &two) != self.im {
            y = -y;
        }
        let r = CRational::new(x, y);
        if &(&r * &r) == self {
            Some(r)
        } else {
            None
        }
    }

    fn is_zero_value(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn sqrt_rational(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best-effort exact conversion of a finite `f64` to a rational.
pub fn ratio_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

impl Default for CRational {
    fn default() -> Self {
        CRational::new(BigRational::zero(), BigRational::zero())
    }
}

impl fmt::Debug for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}I", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({}-{}I)", self.re, -self.im.clone())
                } else {
                    write!(f, "({}+{}I)", self.re, self.im)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $imp:ident) => {
        impl<'a> $Trait<&'a CRational> for &'a CRational {
            type Output = CRational;
            fn $method(self, rhs: &'a CRational) -> CRational {
                $imp(self, rhs)
            }
        }
        impl $Trait<CRational> for CRational {
            type Output = CRational;
            fn $method(self, rhs: CRational) -> CRational {
                $imp(&self, &rhs)
            }
        }
        impl<'a> $Trait<&'a CRational> for CRational {
            type Output = CRational;
            fn $method(self, rhs: &'a CRational) -> CRational {
                $imp(&self, rhs)
            }
        }
        impl<'a> $Trait<CRational> for &'a CRational {
            type Output = CRational;
            fn $method(self, rhs: CRational) -> CRational {
                $imp(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &CRational, b: &CRational) -> CRational {
    CRational::new(&a.re + &b.re, &a.im + &b.im)
}

fn sub_impl(a: &CRational, b: &CRational) -> CRational {
    CRational::new(&a.re - &b.re, &a.im - &b.im)
}

fn mul_impl(a: &CRational, b: &CRational) -> CRational {
    CRational::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
}

/// Panics on division by zero; use [`CRational::checked_div`] otherwise.
fn div_impl(a: &CRational, b: &CRational) -> CRational {
    a.checked_div(b).expect("CRational division by zero")
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl From<i64> for CRational {
    fn from(n: i64) -> Self {
        CRational::from_ints(n, 0)
    }
}

impl From<BigRational> for CRational {
    fn from(r: BigRational) -> Self {
        CRational::real(r)
    }
}

impl Scalar for CRational {
    fn zero() -> Self {
        CRational::default()
    }
    fn one() -> Self {
        CRational::from_ints(1, 0)
    }
    fn imag_unit() -> Self {
        CRational::i()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
    fn conj(&self) -> Self {
        CRational::new(self.re.clone(), -self.im.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_i64(n: i64) -> Self {
        CRational::from_ints(n, 0)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}
