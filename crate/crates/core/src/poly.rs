//! Laurent polynomials in one complex variable `z` with coefficients in a
//! (possibly non-commutative) algebra over the Gaussian rationals.
//!
//! The representation is a sparse exponent map; zero coefficients are never
//! stored, so structural equality is mathematical equality. Products keep the
//! coefficient order `aᵢ·bⱼ`, which matters for quaternion coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quat::{CQuat, FQuat};
use crate::scalar::{CRational, Scalar};

/// Coefficient ring of a [`Laurent`] polynomial: an associative algebra over
/// ℚ(ı) with unit.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &CRational) -> Self;
    fn from_scalar(s: CRational) -> Self;
}

impl Coeff for CRational {
    fn zero() -> Self {
        <CRational as Scalar>::zero()
    }
    fn one() -> Self {
        <CRational as Scalar>::one()
    }
    fn is_zero(&self) -> bool {
        <CRational as Scalar>::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &CRational) -> Self {
        self * s
    }
    fn from_scalar(s: CRational) -> Self {
        s
    }
}

impl Coeff for CQuat {
    fn zero() -> Self {
        CQuat::zero()
    }
    fn one() -> Self {
        CQuat::one()
    }
    fn is_zero(&self) -> bool {
        CQuat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale(&self, s: &CRational) -> Self {
        CQuat::scale(self, s)
    }
    fn from_scalar(s: CRational) -> Self {
        CQuat::scalar(s)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    terms: BTreeMap<i32, C>,
}

/// Complex Laurent polynomial; also used for ordinary polynomials.
pub type CLaurent = Laurent<CRational>;
/// Laurent polynomial with complex-quaternion coefficients.
pub type QLaurent = Laurent<CQuat>;

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// `c·z` for the unit coefficient `c = 1`.
    pub fn z() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(C::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent present.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn is_polynomial(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn scale(&self, s: &CRational) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.scale(s))))
    }

    /// Left multiplication by a constant coefficient.
    pub fn left_mul(&self, c: &C) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, c.mul(a))))
    }

    /// Right multiplication by a constant coefficient.
    pub fn right_mul(&self, c: &C) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a.mul(c))))
    }

    /// Product with a scalar Laurent polynomial (central, so order-free).
    pub fn mul_scalar(&self, s: &CLaurent) -> Self {
        let mut out = Self::zero();
        for (e, a) in self.terms() {
            for (f, b) in s.terms() {
                out.add_term(e + f, a.scale(b));
            }
        }
        out
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn map<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Laurent<D> {
        Laurent::from_terms(self.terms().map(|(e, c)| (e, f(c))))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c.scale(&CRational::from(e as i64)))),
        )
    }

    /// Integrates term by term; the `z⁻¹` coefficient becomes a logarithmic
    /// term at the pole `0`.
    pub fn antiderivative(&self) -> AntiderivativeForm<C> {
        let mut principal = Self::zero();
        let mut log_terms = Vec::new();
        for (e, c) in self.terms() {
            if e == -1 {
                log_terms.push((<CRational as Coeff>::zero(), c.clone()));
            } else {
                let k = CRational::from((e + 1) as i64);
                principal.add_term(e + 1, c.scale(&k.inv().expect("nonzero")));
            }
        }
        AntiderivativeForm {
            principal,
            log_terms,
        }
    }

    /// Antiderivative with an explicit list of admissible poles. Only the pole
    /// at the origin can be integrated exactly; a Laurent polynomial with
    /// negative powers needs `0` to be listed.
    pub fn antiderivative_at(&self, poles: &[CRational]) -> Result<AntiderivativeForm<C>> {
        if let Some(p) = poles.iter().find(|p| !Coeff::is_zero(*p)) {
            return Err(Error::UnsupportedPoleStructure(format!(
                "pole at {p} away from the origin; use the numeric path"
            )));
        }
        if !self.is_polynomial() && poles.is_empty() {
            return Err(Error::UnsupportedPoleStructure(
                "integrand has a pole at 0 that was not listed".into(),
            ));
        }
        Ok(self.antiderivative())
    }

    /// Coefficient of `z⁻¹`.
    pub fn residue_at_zero(&self) -> C {
        self.coeff(-1)
    }

    pub fn eval(&self, z: &CRational) -> Result<C> {
        if Coeff::is_zero(z) {
            if !self.is_polynomial() {
                return Err(Error::PoleEvaluation);
            }
            return Ok(self.coeff(0));
        }
        let inv = z.inv()?;
        let mut acc = C::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                z.pow(e as u32)
            } else {
                inv.pow((-e) as u32)
            };
            acc = acc.add(&c.scale(&p));
        }
        Ok(acc)
    }

    /// `p(a·z + b)` for a polynomial `p`.
    pub fn compose_affine(&self, a: &CRational, b: &CRational) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        let lin = CLaurent::from_terms([(1, a.clone()), (0, b.clone())]);
        let mut acc = Self::zero();
        let deg = self.degree().unwrap_or(0);
        for e in (0..=deg).rev() {
            acc = acc.mul_scalar(&lin) + Self::constant(self.coeff(e));
        }
        Ok(acc)
    }

    /// Exact quotient by a scalar Laurent polynomial, if it exists.
    pub fn div_exact(&self, d: &CLaurent) -> Option<Self> {
        let (q, r) = self.div_rem_shifted(d)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Writes `d = z^k·d̃` with `d̃(0) ≠ 0` and divides `z^{-m}·self` by `d̃`,
    /// returning the quotient shifted back by `z^{m−k}` and the raw remainder.
    fn div_rem_shifted(&self, d: &CLaurent) -> Option<(Self, Self)> {
        let dk = d.valuation()?;
        let dt = d.shift(-dk);
        if self.is_zero() {
            return Some((Self::zero(), Self::zero()));
        }
        let m = self.valuation().unwrap_or(0);
        let (q, r) = self.shift(-m).poly_div_rem(&dt);
        Some((q.shift(m - dk), r))
    }

    /// Polynomial long division by a scalar polynomial `d` (both without
    /// negative powers).
    fn poly_div_rem(&self, d: &CLaurent) -> (Self, Self) {
        let dd = d.degree().expect("nonzero divisor");
        let inv_lead = d
            .leading_coeff()
            .expect("nonzero divisor")
            .inv()
            .expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let t = rem.coeff(rd).scale(&inv_lead);
            let shift = rd - dd;
            for (e, c) in d.terms() {
                rem.add_term(e + shift, t.scale(c).neg());
            }
            quot.add_term(shift, t);
        }
        (quot, rem)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e, a) in self.terms() {
            for (f, b) in o.terms() {
                out.add_term(e + f, a.mul(b));
            }
        }
        out
    }

    fn add_impl(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    fn sub_impl(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.neg());
        }
        out
    }

    fn neg_impl(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.neg())))
    }
}

macro_rules! laurent_binop {
    ($Trait:ident, $method:ident, $imp:ident) => {
        impl<'a, C: Coeff> $Trait<&'a Laurent<C>> for &'a Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: &'a Laurent<C>) -> Laurent<C> {
                self.$imp(rhs)
            }
        }
        impl<C: Coeff> $Trait for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: Laurent<C>) -> Laurent<C> {
                self.$imp(&rhs)
            }
        }
        impl<'a, C: Coeff> $Trait<&'a Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: &'a Laurent<C>) -> Laurent<C> {
                self.$imp(rhs)
            }
        }
    };
}

laurent_binop!(Add, add, add_impl);
laurent_binop!(Sub, sub, sub_impl);
laurent_binop!(Mul, mul, mul_impl);

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        self.neg_impl()
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        self.neg_impl()
    }
}

impl<C: fmt::Debug> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}·z^{e}")?;
        }
        Ok(())
    }
}

impl<C: fmt::Display> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Result of integrating a Laurent polynomial: a principal part without a
/// `z⁻¹` term plus logarithmic terms `residue·log(z − pole)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiderivativeForm<C> {
    pub principal: Laurent<C>,
    pub log_terms: Vec<(CRational, C)>,
}

impl<C: Coeff> AntiderivativeForm<C> {
    pub fn has_log_terms(&self) -> bool {
        !self.log_terms.is_empty()
    }

    /// Differentiates back to the integrand; only poles at `0` are
    /// representable as Laurent polynomials.
    pub fn derivative(&self) -> Result<Laurent<C>> {
        let mut out = self.principal.derivative();
        for (pole, res) in &self.log_terms {
            if !Coeff::is_zero(pole) {
                return Err(Error::UnsupportedPoleStructure(format!(
                    "log term at {pole}"
                )));
            }
            out.add_term(-1, res.clone());
        }
        Ok(out)
    }
}

impl CLaurent {
    pub fn from_ints(terms: &[(i32, i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, re, im)| (e, CRational::from_ints(re, im))),
        )
    }

    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        self.terms()
            .map(|(e, c)| c.to_c64() * z.powi(e))
            .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }

    pub fn is_real(&self) -> bool {
        self.terms().all(|(_, c)| c.is_real())
    }

    /// Complex conjugation of coefficients.
    pub fn conj_coeffs(&self) -> Self {
        self.map(Scalar::conj)
    }

    /// Normalizes a nonzero polynomial to leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero")),
            None => Self::zero(),
        }
    }

    /// Division with remainder for polynomials.
    pub fn div_rem(&self, d: &CLaurent) -> Result<(Self, Self)> {
        if !self.is_polynomial() || !d.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.poly_div_rem(d))
    }

    /// Monic greatest common divisor of two polynomials.
    pub fn gcd(a: &CLaurent, b: &CLaurent) -> Result<CLaurent> {
        Ok(Self::bezout(a, b)?.0)
    }

    /// Extended Euclid: returns `(g, α, β)` with `α·a + β·b = g`, `g` monic.
    pub fn bezout(a: &CLaurent, b: &CLaurent) -> Result<(CLaurent, CLaurent, CLaurent)> {
        if !a.is_polynomial() || !b.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.poly_div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        let inv = r0
            .leading_coeff()
            .expect("nonzero gcd")
            .inv()
            .expect("nonzero");
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Folds [`CLaurent::gcd`] over a list, skipping zero entries.
    pub fn gcd_many(polys: &[CLaurent]) -> Result<CLaurent> {
        let mut acc: Option<CLaurent> = None;
        for p in polys.iter().filter(|p| !p.is_zero()) {
            acc = Some(match acc {
                None => p.monic(),
                Some(g) => Self::gcd(&g, p)?,
            });
        }
        acc.ok_or(Error::BothZero)
    }
}

impl QLaurent {
    pub fn from_components(c: [CLaurent; 4]) -> Self {
        let mut out = Self::zero();
        for (l, comp) in c.iter().enumerate() {
            for (e, v) in comp.terms() {
                let mut q = CQuat::zero();
                q.c[l] = v.clone();
                out.add_term(e, q);
            }
        }
        out
    }

    pub fn component(&self, l: usize) -> CLaurent {
        CLaurent::from_terms(self.terms().map(|(e, q)| (e, q.c[l].clone())))
    }

    pub fn components(&self) -> [CLaurent; 4] {
        [
            self.component(0),
            self.component(1),
            self.component(2),
            self.component(3),
        ]
    }

    pub fn from_scalar_laurent(s: &CLaurent) -> Self {
        s.map(|c| CQuat::scalar(c.clone()))
    }

    /// Coefficient-wise quaternionic conjugate (the variable stays put).
    pub fn conj_quat(&self) -> Self {
        self.map(CQuat::conj_quat)
    }

    pub fn is_pure_vector(&self) -> bool {
        self.terms().all(|(_, q)| q.is_pure_vector())
    }

    /// All coefficients real.
    pub fn is_real(&self) -> bool {
        self.terms().all(|(_, q)| q.is_real())
    }

    /// Complex squared norm `a·aᶜ`, which is scalar for every `a`.
    pub fn qsnorm(&self) -> CLaurent {
        let prod = self * &self.conj_quat();
        debug_assert!(prod.is_scalar(), "a·aᶜ must have vanishing vector part");
        prod.component(0)
    }

    /// `Φ₁² + Φ₂² + Φ₃²`.
    pub fn vector_snorm(&self) -> CLaurent {
        let [_, a, b, c] = self.components();
        &(&a * &a) + &(&(&b * &b) + &(&c * &c))
    }

    pub fn is_scalar(&self) -> bool {
        self.terms()
            .all(|(_, q)| q.c[1..].iter().all(Coeff::is_zero))
    }

    pub fn eval_f64(&self, z: Complex64) -> FQuat {
        let mut acc = FQuat::zero();
        for (e, q) in self.terms() {
            acc = acc + q.to_f64().scale(&z.powi(e));
        }
        acc
    }

    pub fn to_f64_terms(&self) -> Vec<(i32, FQuat)> {
        self.terms().map(|(e, q)| (e, q.to_f64())).collect()
    }
}

/// Evaluates pre-converted floating terms `Σ cₑ zᵉ`.
pub fn eval_f64_terms(terms: &[(i32, FQuat)], z: Complex64) -> FQuat {
    let mut acc = FQuat::zero();
    for (e, q) in terms {
        acc = acc + q.scale(&z.powi(*e));
    }
    acc
}

/// `true` when every coefficient of `p` has a vanishing imaginary part.
pub fn has_real_coefficients(p: &CLaurent) -> bool {
    p.terms().all(|(_, c)| c.im.is_zero())
}
