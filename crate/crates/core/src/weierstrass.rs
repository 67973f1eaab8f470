//! Representations of an isotropic curve `Φ` and the conversions between
//! them: Weierstraß–Enneper data `(f, g)`, the `(p, q, w)` form, and preimage
//! pairs `(A, λ)` with `Φ = λ·A·L·Aᶜ`, `L = i + ıj`.
//!
//! Preimages are not unique (the stabilizer of `L` acts on `A`), so every
//! converter promises only the certificate `λ·A·L·Aᶜ = Φ`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{CLaurent, QLaurent};
use crate::quat::CQuat;
use crate::scalar::{CRational, Scalar};
use crate::sylvester::{find_invertible_h, DEFAULT_H_BUDGET};

/// `Φ₁² + Φ₂² + Φ₃²`; zero exactly for isotropic curves.
pub fn isotropy_defect(phi: &QLaurent) -> CLaurent {
    phi.vector_snorm()
}

/// `A·L·Aᶜ`.
pub fn sandwich_l(a: &QLaurent) -> QLaurent {
    &(a * &QLaurent::constant(CQuat::null_l())) * &a.conj_quat()
}

/// A Laurent polynomial `Φ` with `Φ₀ ≡ 0` and `Φˢ ≡ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicCurve {
    phi: QLaurent,
}

impl IsotropicCurve {
    pub fn new(phi: QLaurent) -> Result<Self> {
        if !phi.component(0).is_zero() {
            return Err(Error::ScalarPart);
        }
        if !isotropy_defect(&phi).is_zero() {
            return Err(Error::NotIsotropic);
        }
        Ok(IsotropicCurve { phi })
    }

    pub fn phi(&self) -> &QLaurent {
        &self.phi
    }

    pub fn into_phi(self) -> QLaurent {
        self.phi
    }
}

/// Weierstraß–Enneper data with meromorphic `g = g_num / g_den`.
#[derive(Clone, Debug, PartialEq)]
pub struct WEData {
    pub f: CLaurent,
    pub g_num: CLaurent,
    pub g_den: CLaurent,
}

/// Assembles `Φ = ½(f(1−g²), ıf(1+g²), 2fg)`; the result must cancel to a
/// Laurent polynomial.
pub fn phi_from_fg(d: &WEData) -> Result<IsotropicCurve> {
    if d.g_den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (n, m) = (&d.g_num, &d.g_den);
    let n2 = n * n;
    let m2 = m * m;
    let denom = m2.scale(&CRational::from(2));
    let i = CRational::i();
    let nums = [
        &d.f * &(&m2 - &n2),
        (&d.f * &(&m2 + &n2)).scale(&i),
        (&d.f * &(n * m)).scale(&CRational::from(2)),
    ];
    let mut comps: [CLaurent; 4] = Default::default();
    for (l, num) in nums.iter().enumerate() {
        comps[l + 1] = num.div_exact(&denom).ok_or(Error::IncompatibleWE)?;
    }
    IsotropicCurve::new(QLaurent::from_components(comps))
}

/// Recovers `f = Φ₁ − ıΦ₂` and `g = Φ₃ / f` in lowest terms.
pub fn fg_from_phi(phi: &IsotropicCurve) -> Result<WEData> {
    let [_, p1, p2, p3] = phi.phi().components();
    let f = &p1 - &p2.scale(&CRational::i());
    if f.is_zero() {
        return Err(Error::DegenerateWE);
    }
    let (g_num, g_den) = reduce_fraction(&p3, &f)?;
    Ok(WEData { f, g_num, g_den })
}

/// Cancels a Laurent fraction `n/d` to lowest terms with `d` a monic
/// polynomial and `d(0) ≠ 0`.
pub fn reduce_fraction(n: &CLaurent, d: &CLaurent) -> Result<(CLaurent, CLaurent)> {
    let dv = d.valuation().ok_or(Error::DivisionByZero)?;
    if n.is_zero() {
        return Ok((CLaurent::zero(), CLaurent::one()));
    }
    let nv = n.valuation().unwrap_or(0);
    let np = n.shift(-nv);
    let dp = d.shift(-dv);
    let g = CLaurent::gcd(&np, &dp)?;
    let np = np.div_exact(&g).ok_or(Error::InexactDivision)?;
    let dp = dp.div_exact(&g).ok_or(Error::InexactDivision)?;
    let lc = dp.leading_coeff().expect("nonzero").inv()?;
    Ok((np.scale(&lc).shift(nv - dv), dp.scale(&lc)))
}

/// `(p, q, w)` data: `Φ = w·((p²−q²)i + 2pq·j + ı(p²+q²)k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PQWData {
    pub p: CLaurent,
    pub q: CLaurent,
    pub w: CLaurent,
}

pub fn phi_from_pqw(d: &PQWData) -> Result<IsotropicCurve> {
    if !d.p.is_polynomial() || !d.q.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    if !d.w.is_polynomial() {
        return Err(Error::NonPolynomialScale);
    }
    let (p2, q2) = (&d.p * &d.p, &d.q * &d.q);
    let comps = [
        CLaurent::zero(),
        &d.w * &(&p2 - &q2),
        &d.w * &(&d.p * &d.q).scale(&CRational::from(2)),
        &d.w * &(&p2 + &q2).scale(&CRational::i()),
    ];
    IsotropicCurve::new(QLaurent::from_components(comps))
}

/// A scale `λ = num / den` with `den` a monic polynomial, `den(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalScale {
    pub num: CLaurent,
    pub den: CLaurent,
}

impl RationalScale {
    pub fn new(num: CLaurent, den: CLaurent) -> Result<Self> {
        let (num, den) = reduce_fraction(&num, &den)?;
        Ok(RationalScale { num, den })
    }

    pub fn laurent(p: CLaurent) -> Self {
        RationalScale {
            num: p,
            den: CLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::laurent(CLaurent::one())
    }

    /// `1/p` for a nonzero Laurent polynomial `p`.
    pub fn reciprocal(p: &CLaurent) -> Result<Self> {
        Self::new(CLaurent::one(), p.clone())
    }

    pub fn as_laurent(&self) -> Option<&CLaurent> {
        (self.den == CLaurent::one()).then_some(&self.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_laurent().is_some_and(CLaurent::is_polynomial)
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn scale(&self, c: &CRational) -> Self {
        RationalScale {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        self.num.eval_f64(z) / self.den.eval_f64(z)
    }

    /// `λ·P`, which must cancel to a Laurent polynomial.
    pub fn apply(&self, p: &QLaurent) -> Result<QLaurent> {
        p.mul_scalar(&self.num)
            .div_exact(&self.den)
            .ok_or(Error::InexactDivision)
    }
}

impl fmt::Display for RationalScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == CLaurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `(A, λ)` with `Φ = λ·A·L·Aᶜ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreimagePair {
    pub a: QLaurent,
    pub lambda: RationalScale,
}

impl PreimagePair {
    pub fn new(a: QLaurent, lambda: RationalScale) -> Self {
        PreimagePair { a, lambda }
    }

    /// `λ·A·L·Aᶜ`.
    pub fn phi(&self) -> Result<QLaurent> {
        self.lambda.apply(&sandwich_l(&self.a))
    }

    pub fn curve(&self) -> Result<IsotropicCurve> {
        IsotropicCurve::new(self.phi()?)
    }

    pub fn certifies(&self, phi: &QLaurent) -> bool {
        self.phi().is_ok_and(|p| &p == phi)
    }

    /// A representative with tidier constants: when the lowest coefficient
    /// of `Aˢ` is a square `u²` in ℚ(ı), `A` is divided by `u` (and `λ`
    /// multiplied by `u²`); then the sign of `A` is fixed so that its first
    /// nonzero coefficient is positive. The certificate is unchanged.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        let an = out.a.qsnorm();
        if let Some(v) = an.valuation() {
            if let Some(u) = an.coeff(v).sqrt_exact() {
                let inv = u.inv().expect("nonzero");
                out.a = out.a.scale(&inv);
                out.lambda = out.lambda.scale(&(&u * &u));
            }
        }
        if leading_sign_negative(&out.a) {
            out.a = -out.a;
        }
        out
    }
}

fn leading_sign_negative(a: &QLaurent) -> bool {
    for (_, q) in a.terms() {
        for c in &q.c {
            if !Scalar::is_zero(c) {
                return if c.re.is_zero() {
                    c.im.is_negative()
                } else {
                    c.re.is_negative()
                };
            }
        }
    }
    false
}

/// `A = p + p·i + q·j + q·k`, `λ = w/2` (for this `A`, `A·L·Aᶜ` is twice the
/// `(p, q, w=1)` curve).
pub fn pair_from_pqw(d: &PQWData) -> Result<PreimagePair> {
    if !d.w.is_polynomial() {
        return Err(Error::NonPolynomialScale);
    }
    if !d.p.is_polynomial() || !d.q.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let a = QLaurent::from_components([d.p.clone(), d.p.clone(), d.q.clone(), d.q.clone()]);
    let half = CRational::from_fracs(1, 2, 0, 1);
    Ok(PreimagePair::new(
        a,
        RationalScale::laurent(d.w.scale(&half)),
    ))
}

/// `p = ½(a₀+a₁+ıa₂−ıa₃)`, `q = ½(ıa₀−ıa₁+a₂+a₃)`, `w = 2λ`.
pub fn pqw_from_pair(pair: &PreimagePair) -> Result<PQWData> {
    let lambda = pair.lambda.as_laurent().filter(|l| l.is_polynomial());
    let lambda = lambda.ok_or(Error::NonPolynomialScale)?;
    if !pair.a.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let [a0, a1, a2, a3] = pair.a.components();
    let i = CRational::i();
    let half = CRational::from_fracs(1, 2, 0, 1);
    let p = (&(&a0 + &a1) + &(&a2 - &a3).scale(&i)).scale(&half);
    let q = (&(&a0 - &a1).scale(&i) + &(&a2 + &a3)).scale(&half);
    Ok(PQWData {
        p,
        q,
        w: lambda.scale(&CRational::from(2)),
    })
}

/// Rational preimage from the conjugator: `χ = Φh + hL` for the first
/// admissible ladder `h`, `A = χ` with common powers of `z` removed,
/// `λ = 1/Aˢ`.
pub fn pair_from_phi_rational(curve: &IsotropicCurve) -> Result<PreimagePair> {
    pair_from_phi_rational_budget(curve, DEFAULT_H_BUDGET)
}

pub fn pair_from_phi_rational_budget(
    curve: &IsotropicCurve,
    budget: usize,
) -> Result<PreimagePair> {
    let l = QLaurent::constant(CQuat::null_l());
    let (_, chi) = find_invertible_h(curve.phi(), &l, budget)?;
    let a = chi.shift(-chi.valuation().unwrap_or(0));
    let lambda = RationalScale::reciprocal(&a.qsnorm())?;
    Ok(PreimagePair::new(a, lambda))
}

/// Polynomial preimage with `Aˢ = 1` and polynomial `λ` for a polynomial
/// curve, following the `C₁₂ / C₀₃` split and a Bézout step.
pub fn pair_from_phi_polynomial(curve: &IsotropicCurve) -> Result<PreimagePair> {
    let phi = curve.phi();
    if !phi.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let comps: Vec<CLaurent> = phi.components()[1..].to_vec();
    let lambda_g = CLaurent::gcd_many(&comps)?;
    let reduced = phi.div_exact(&lambda_g).ok_or(Error::InexactDivision)?;

    let l = QLaurent::constant(CQuat::null_l());
    let (_, mut c) = find_invertible_h(&reduced, &l, DEFAULT_H_BUDGET)?;
    let [c0, c1, c2, c3] = c.components();
    let i = CRational::i();
    let c12 = &c1 + &c2.scale(&i);
    let c03 = &c0.scale(&i) + &c3;
    let sigma = CLaurent::gcd(&c12, &c03)?;
    let sigma2 = &sigma * &sigma;

    // Cˢ = u·σ² for a constant u; absorb √u into C when it is rational.
    let unit = c
        .qsnorm()
        .div_exact(&sigma2)
        .ok_or(Error::InexactDivision)?;
    if unit.num_terms() == 1 && unit.degree() == Some(0) {
        if let Some(r) = unit.coeff(0).sqrt_exact() {
            c = c.scale(&r.inv()?);
        }
    }
    let [c0, c1, c2, c3] = c.components();
    let c12 = &c1 + &c2.scale(&i);
    let c03 = &c0.scale(&i) + &c3;
    let a12 = c12.div_exact(&sigma).ok_or(Error::InexactDivision)?;
    let a03 = c03.div_exact(&sigma).ok_or(Error::InexactDivision)?;
    let (_, alpha, beta) = CLaurent::bezout(&a12, &a03)?;

    let half = CRational::from_fracs(1, 2, 0, 1);
    let h = &QLaurent::from_scalar_laurent(&alpha.scale(&half))
        - &QLaurent::from_scalar_laurent(&beta.scale(&half)).right_mul(&CQuat::unit_j());
    let psi = sandwich_l(&c)
        .div_exact(&sigma2)
        .ok_or(Error::InexactDivision)?;
    let a = &(&psi * &h) + &(&h * &l);

    let p = sandwich_l(&a);
    let lambda = scalar_quotient(phi, &p).ok_or(Error::InexactDivision)?;
    let pair = PreimagePair::new(a, RationalScale::laurent(lambda));
    debug_assert!(pair.certifies(phi));
    Ok(pair)
}

/// The scalar Laurent polynomial `μ` with `μ·p = target`, if there is one.
fn scalar_quotient(target: &QLaurent, p: &QLaurent) -> Option<CLaurent> {
    let l = (1..4).find(|&l| !p.component(l).is_zero())?;
    let mu = target.component(l).div_exact(&p.component(l))?;
    (&p.mul_scalar(&mu) == target).then_some(mu)
}

/// Real-coefficient `B` with `B·L·Bᶜ = A·L·Aᶜ`, coefficient-wise
/// `B = (Re a₀ + Im a_k) + (Re a_i − Im a_j)i + (Im a_i + Re a_j)j + (Re a_k − Im a₀)k`.
pub fn real_preimage(a: &QLaurent) -> QLaurent {
    a.map(|q| {
        let [a0, ai, aj, ak] = &q.c;
        let r = |x: num_rational::BigRational| CRational::real(x);
        CQuat::new(
            r(&a0.re + &ak.im),
            r(&ai.re - &aj.im),
            r(&ai.im + &aj.re),
            r(&ak.re - &a0.im),
        )
    })
}
