//! Real bivariate expressions in `(u, v)` for closed-form surface
//! components: rational functions with denominator `(u²+v²)ᵈ` plus
//! `ln(u²+v²)` and `arg(u+ıv)` terms.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Float, One, Signed, Zero};

use crate::scalar::{ratio_to_f64, CRational};

/// Polynomial in `u, v` with rational coefficients, keyed by `(deg_u, deg_v)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, du: u32, dv: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(du, dv, c);
        p
    }

    pub fn u() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `u² + v²`.
    pub fn rho() -> Self {
        &(&Self::u() * &Self::u()) + &(&Self::v() * &Self::v())
    }

    pub fn from_ints(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, du: u32, dv: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((du, dv)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(du, dv));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, du: u32, dv: u32) -> BigRational {
        self.terms
            .get(&(du, dv))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero();
        for ((a, b), x) in self.terms() {
            p.add_term(a, b, x * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn du(&self) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in self.terms().filter(|((a, _), _)| *a > 0) {
            p.add_term(a - 1, b, c * BigRational::from_integer(a.into()));
        }
        p
    }

    pub fn dv(&self) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in self.terms().filter(|((_, b), _)| *b > 0) {
            p.add_term(a, b - 1, c * BigRational::from_integer(b.into()));
        }
        p
    }

    pub fn eval(&self, u: &BigRational, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for ((a, b), c) in self.terms() {
            acc += c * pow_rat(u, a) * pow_rat(v, b);
        }
        acc
    }

    pub fn eval_f64(&self, u: f64, v: f64) -> f64 {
        self.terms()
            .map(|((a, b), c)| ratio_to_f64(c) * powi(u, a) * powi(v, b))
            .sum()
    }

    /// Quotient by `u² + v²` if the division is exact.
    pub fn div_rho(&self) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        loop {
            let Some((&(a, b), c)) = rem.terms.iter().rev().find(|((a, _), _)| *a >= 2) else {
                break;
            };
            let c = c.clone();
            quot.add_term(a - 2, b, c.clone());
            rem.add_term(a, b, -c.clone());
            rem.add_term(a - 2, b + 2, -c);
        }
        rem.is_zero().then_some(quot)
    }

    /// Real and imaginary parts of `c·(u + ıv)ⁿ`.
    pub fn re_im_of_power(c: &CRational, n: u32) -> (Self, Self) {
        let (mut re, mut im) = (Self::constant(c.re.clone()), Self::constant(c.im.clone()));
        for _ in 0..n {
            // (re + ı im)(u + ı v)
            let nre = &(&re * &Self::u()) - &(&im * &Self::v());
            let nim = &(&re * &Self::v()) + &(&im * &Self::u());
            re = nre;
            im = nim;
        }
        (re, im)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for ((a, b), x) in self.terms() {
            for ((c, d), y) in o.terms() {
                p.add_term(a + c, b + d, x * y);
            }
        }
        p
    }

    fn add_impl(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for ((a, b), c) in o.terms() {
            p.add_term(a, b, c.clone());
        }
        p
    }

    fn sub_impl(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for ((a, b), c) in o.terms() {
            p.add_term(a, b, -c.clone());
        }
        p
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn powi(x: f64, e: u32) -> f64 {
    (0..e).fold(1.0, |acc, _| acc * x)
}

macro_rules! bipoly_binop {
    ($Trait:ident, $method:ident, $imp:ident) => {
        impl<'a> $Trait<&'a BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &'a BiPoly) -> BiPoly {
                self.$imp(rhs)
            }
        }
        impl $Trait for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$imp(&rhs)
            }
        }
    };
}

bipoly_binop!(Add, add, add_impl);
bipoly_binop!(Sub, sub, sub_impl);
bipoly_binop!(Mul, mul, mul_impl);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mono = *a > 0 || *b > 0;
            if !mono || !mag.is_one() {
                write!(f, "{mag}")?;
                if mono {
                    write!(f, "*")?;
                }
            }
            let var = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| match e {
                0 => Ok(()),
                1 => write!(f, "{name}"),
                _ => write!(f, "{name}^{e}"),
            };
            var(f, "u", *a)?;
            if *a > 0 && *b > 0 {
                write!(f, "*")?;
            }
            var(f, "v", *b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `numerator / (u²+v²)^denom_power + log_coeff·ln(u²+v²) + arg_coeff·arg(u+ıv)`.
///
/// [`SurfaceExpr::canonical`] cancels common factors of `u²+v²`, so two
/// canonical expressions are equal exactly when their coefficients match.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SurfaceExpr {
    pub numerator: BiPoly,
    pub denom_power: u32,
    pub log_coeff: BigRational,
    pub arg_coeff: BigRational,
}

impl SurfaceExpr {
    pub fn polynomial(p: BiPoly) -> Self {
        SurfaceExpr {
            numerator: p,
            denom_power: 0,
            log_coeff: BigRational::zero(),
            arg_coeff: BigRational::zero(),
        }
    }

    pub fn rational(numerator: BiPoly, denom_power: u32) -> Self {
        SurfaceExpr {
            denom_power,
            ..Self::polynomial(numerator)
        }
        .canonical()
    }

    pub fn with_log(mut self, c: BigRational) -> Self {
        self.log_coeff = c;
        self
    }

    pub fn canonical(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denom_power = 0;
        }
        while self.denom_power > 0 {
            match self.numerator.div_rho() {
                Some(q) => {
                    self.numerator = q;
                    self.denom_power -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn has_transcendental_terms(&self) -> bool {
        !self.log_coeff.is_zero() || !self.arg_coeff.is_zero()
    }

    /// Exact value at a rational point, available when there are no log or
    /// arg terms and the point is not the origin (or the expression has no
    /// denominator).
    pub fn eval_exact(&self, u: &BigRational, v: &BigRational) -> Option<BigRational> {
        if self.has_transcendental_terms() {
            return None;
        }
        let rho = u * u + v * v;
        let num = self.numerator.eval(u, v);
        if self.denom_power == 0 {
            return Some(num);
        }
        if rho.is_zero() {
            return None;
        }
        Some(num / pow_rat(&rho, self.denom_power))
    }

    /// Floating value; `arg` is measured continuously from `arg_branch`,
    /// i.e. taken in `(arg_branch − π, arg_branch + π]`.
    pub fn eval_f64(&self, u: f64, v: f64, arg_branch: f64) -> f64 {
        let rho = u * u + v * v;
        let mut x = self.numerator.eval_f64(u, v);
        if self.denom_power > 0 {
            x /= powi(rho, self.denom_power);
        }
        if !self.log_coeff.is_zero() {
            x += ratio_to_f64(&self.log_coeff) * Float::ln(rho);
        }
        if !self.arg_coeff.is_zero() {
            x += ratio_to_f64(&self.arg_coeff) * branch_arg(u, v, arg_branch);
        }
        x
    }
}

/// `arg(u + ıv)` in `(center − π, center + π]`.
pub fn branch_arg(u: f64, v: f64, center: f64) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let mut a = Float::atan2(v, u);
    while a - center > core::f64::consts::PI {
        a -= tau;
    }
    while a - center <= -core::f64::consts::PI {
        a += tau;
    }
    a
}

impl Add for SurfaceExpr {
    type Output = SurfaceExpr;
    fn add(self, o: SurfaceExpr) -> SurfaceExpr {
        let d = self.denom_power.max(o.denom_power);
        let lift = |e: &SurfaceExpr| &e.numerator * &BiPoly::rho().pow(d - e.denom_power);
        SurfaceExpr {
            numerator: &lift(&self) + &lift(&o),
            denom_power: d,
            log_coeff: &self.log_coeff + &o.log_coeff,
            arg_coeff: &self.arg_coeff + &o.arg_coeff,
        }
        .canonical()
    }
}

impl SurfaceExpr {
    pub fn scale(&self, c: &BigRational) -> Self {
        SurfaceExpr {
            numerator: self.numerator.scale(c),
            denom_power: self.denom_power,
            log_coeff: &self.log_coeff * c,
            arg_coeff: &self.arg_coeff * c,
        }
        .canonical()
    }
}

impl fmt::Display for SurfaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.numerator.is_zero() || !self.has_transcendental_terms() {
            match self.denom_power {
                0 => write!(f, "{}", self.numerator)?,
                1 => write!(f, "({})/(u^2 + v^2)", self.numerator)?,
                d => write!(f, "({})/(u^2 + v^2)^{d}", self.numerator)?,
            }
            wrote = true;
        }
        for (c, name) in [
            (&self.log_coeff, "ln(u^2 + v^2)"),
            (&self.arg_coeff, "arg(u + I*v)"),
        ] {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}*{name}", c.abs())?;
            wrote = true;
        }
        Ok(())
    }
}
