//! Enneper patches: degree-one preimages `A(z)` whose curve `Φ = A·L·Aᶜ`
//! takes prescribed values `φ₀..φ₃` at the vertices of a rectangle.
//!
//! Four null vectors are admissible exactly when they satisfy
//!
//! * `φ + φᶜ = φφᶜ = 0` (each is a point of the null cone),
//! * `|R|²φ₀ + R²φ₁ − |R|²φ₂ − R²φ₃ = 0` with `R = r₁ + ır₂`,
//! * the cross ratio of the vertices equals that of the four points on the
//!   null cone.
//!
//! The null cone is parametrized by
//! `N(s, t) = (s²+t²)i + ı(s²−t²)j + 2ıst·k = (s + t·i)·L·(s + t·i)ᶜ`.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse2, mul2, null_space};
use crate::poly::{CLaurent, QLaurent};
use crate::quat::CQuat;
use crate::scalar::{ratio_to_f64, CRational, Scalar};
use crate::surface::{integrate_surface, ClosedFormSurface, Domain, SurfaceSpec};
use crate::weierstrass::{real_preimage, sandwich_l, IsotropicCurve, PreimagePair, RationalScale};

/// A rectangle with exact vertices `P₀..P₃` in anticlockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleDomain {
    pub p: [CRational; 4],
}

impl RectangleDomain {
    /// `P₁ = P₀ + r₁e^{ıθ}`, `P₂ = P₀ + Re^{ıθ}`, `P₃ = P₀ + ır₂e^{ıθ}` where
    /// `rotation = e^{ıθ}` must have modulus one.
    pub fn from_legs(
        p0: CRational,
        r1: BigRational,
        r2: BigRational,
        rotation: CRational,
    ) -> Result<Self> {
        if !r1.is_positive() || !r2.is_positive() {
            return Err(Error::InvalidRectangle("legs must be positive"));
        }
        if rotation.norm_sqr() != BigRational::from_integer(1.into()) {
            return Err(Error::InvalidRectangle("rotation must have modulus one"));
        }
        let d1 = rotation.scale(&r1);
        let d3 = (&CRational::i() * &rotation).scale(&r2);
        let p1 = &p0 + &d1;
        let p3 = &p0 + &d3;
        let p2 = &p1 + &d3;
        Ok(RectangleDomain {
            p: [p0, p1, p2, p3],
        })
    }

    pub fn from_vertices(p: [CRational; 4]) -> Result<Self> {
        let d1 = &p[1] - &p[0];
        let d3 = &p[3] - &p[0];
        if &(&p[0] + &d1) + &d3 != p[2] {
            return Err(Error::InvalidRectangle(
                "vertices do not form a parallelogram",
            ));
        }
        let w = &d3 * &Scalar::conj(&d1);
        if !w.re.is_zero() {
            return Err(Error::InvalidRectangle("legs are not perpendicular"));
        }
        if !w.im.is_positive() {
            return Err(Error::InvalidRectangle("vertices are not anticlockwise"));
        }
        Ok(RectangleDomain { p })
    }

    /// Unit square `0, 1, 1+ı, ı`.
    pub fn unit_square() -> Self {
        let c = CRational::from_ints;
        RectangleDomain {
            p: [c(0, 0), c(1, 0), c(1, 1), c(0, 1)],
        }
    }

    fn leg1(&self) -> CRational {
        &self.p[1] - &self.p[0]
    }

    fn leg3(&self) -> CRational {
        &self.p[3] - &self.p[0]
    }

    pub fn r1_sq(&self) -> BigRational {
        self.leg1().norm_sqr()
    }

    pub fn r2_sq(&self) -> BigRational {
        self.leg3().norm_sqr()
    }

    /// `r₁·r₂ = Im(d₃·d̄₁)`.
    pub fn r1_r2(&self) -> BigRational {
        (&self.leg3() * &Scalar::conj(&self.leg1())).im
    }

    /// `R² = r₁² − r₂² + 2ır₁r₂`.
    pub fn r_squared(&self) -> CRational {
        let two = BigRational::from_integer(2.into());
        CRational::new(self.r1_sq() - self.r2_sq(), two * self.r1_r2())
    }

    /// `|R|² = r₁² + r₂²`.
    pub fn abs_r_squared(&self) -> BigRational {
        self.r1_sq() + self.r2_sq()
    }

    pub fn r1(&self) -> f64 {
        ratio_to_f64(&self.r1_sq()).sqrt()
    }

    pub fn r2(&self) -> f64 {
        ratio_to_f64(&self.r2_sq()).sqrt()
    }

    pub fn theta(&self) -> f64 {
        let d = self.leg1().to_c64();
        d.im.atan2(d.re)
    }

    /// Rotation `e^{ıθ}` when it is rational.
    pub fn rotation(&self) -> Option<CRational> {
        let r1 = crate::scalar::sqrt_rational(&self.r1_sq())?;
        Some(self.leg1().scale(&r1.recip()))
    }

    /// Local coordinate `w = e^{−ıθ}(z − P₀)`, which moves the vertices to
    /// `0, r₁, R, ır₂`.
    pub fn to_local(&self, z: &CRational) -> Option<CRational> {
        Some(&Scalar::conj(&self.rotation()?) * &(z - &self.p[0]))
    }

    /// Bounding box of the vertices, as a sampling domain.
    pub fn bounding_domain(&self) -> Result<Domain> {
        let pts: Vec<_> = self.p.iter().map(CRational::to_c64).collect();
        let (mut u0, mut u1, mut v0, mut v1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in pts {
            u0 = u0.min(z.re);
            u1 = u1.max(z.re);
            v0 = v0.min(z.im);
            v1 = v1.max(z.im);
        }
        Domain::new(u0, u1, v0, v1)
    }
}

/// Prescribed values `φ₀..φ₃` of `Φ` at the rectangle vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerData {
    pub phi: [CQuat; 4],
}

/// Homogeneous point `[s : t]` of the projective line.
#[derive(Clone, Debug, PartialEq)]
pub struct NullParam {
    pub s: CRational,
    pub t: CRational,
}

impl NullParam {
    pub fn new(s: CRational, t: CRational) -> Self {
        NullParam { s, t }
    }

    pub fn affine(z: CRational) -> Self {
        NullParam {
            s: z,
            t: CRational::one(),
        }
    }

    pub fn infinity() -> Self {
        NullParam {
            s: CRational::one(),
            t: CRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.s) && Scalar::is_zero(&self.t)
    }

    pub fn projectively_eq(&self, o: &NullParam) -> bool {
        Scalar::is_zero(&det(self, o))
    }

    /// Representative with first nonzero entry equal to one.
    pub fn normalized(&self) -> Self {
        let lead = if Scalar::is_zero(&self.s) {
            &self.t
        } else {
            &self.s
        };
        let inv = lead.inv().expect("nonzero parameter");
        NullParam {
            s: &self.s * &inv,
            t: &self.t * &inv,
        }
    }
}

fn det(a: &NullParam, b: &NullParam) -> CRational {
    &a.s * &b.t - &a.t * &b.s
}

pub fn null_point(s: &CRational, t: &CRational) -> Result<CQuat> {
    if Scalar::is_zero(s) && Scalar::is_zero(t) {
        return Err(Error::ZeroParameter);
    }
    let (s2, t2) = (s * s, t * t);
    let i = CRational::i();
    Ok(CQuat::vector(
        &s2 + &t2,
        &i * &(&s2 - &t2),
        &(&i * s) * &t.scale(&BigRational::from_integer(2.into())),
    ))
}

/// Recovers `[s : t]` and `ν` with `φ = ν·N(s, t)`. No square roots are
/// needed: `φ₁ − ıφ₂ = 2νs²` and `−ıφ₃ = 2νst`, so `[s : t] = [φ₁ − ıφ₂ : −ıφ₃]`
/// unless both vanish, in which case `s = 0`.
pub fn null_param(phi: &CQuat) -> Result<(NullParam, CRational)> {
    if !phi.is_pure_vector() {
        return Err(Error::NotVectorial);
    }
    if !Scalar::is_zero(&phi.snorm()) {
        return Err(Error::NotNull);
    }
    if phi.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let i = CRational::i();
    let s = &phi.c[1] - &(&i * &phi.c[2]);
    let t = -(&i * &phi.c[3]);
    let p = if Scalar::is_zero(&s) && Scalar::is_zero(&t) {
        NullParam::new(CRational::zero(), CRational::one())
    } else {
        NullParam::new(s, t).normalized()
    };
    let n = null_point(&p.s, &p.t)?;
    let l = (1..4)
        .find(|&l| !Scalar::is_zero(&n.c[l]))
        .expect("N(s,t) is nonzero");
    let nu = phi.c[l].checked_div(&n.c[l])?;
    debug_assert_eq!(n.scale(&nu), *phi);
    Ok((p, nu))
}

/// `CR(a,b,c,d) = det(a,c)·det(b,d) / (det(b,c)·det(a,d))`, which is
/// `((a−c)(b−d)) / ((b−c)(a−d))` on affine points. At least three of the
/// points must be distinct and the value must be finite.
pub fn cross_ratio(
    a: &NullParam,
    b: &NullParam,
    c: &NullParam,
    d: &NullParam,
) -> Result<CRational> {
    if [a, b, c, d].iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroParameter);
    }
    let pts = [a, b, c, d];
    let distinct = (0..4)
        .filter(|&k| (0..k).all(|m| !pts[k].projectively_eq(pts[m])))
        .count();
    if distinct < 3 {
        return Err(Error::DegenerateTuple);
    }
    let num = &det(a, c) * &det(b, d);
    let den = &det(b, c) * &det(a, d);
    if Scalar::is_zero(&den) {
        return Err(Error::DegenerateTuple);
    }
    num.checked_div(&den)
}

/// `|R|²φ₀ + R²φ₁ − |R|²φ₂ − R²φ₃`.
pub fn linear_relation_defect(rect: &RectangleDomain, phi: &[CQuat; 4]) -> CQuat {
    let a = CRational::real(rect.abs_r_squared());
    let r2 = rect.r_squared();
    let t = |k: usize, c: &CRational| phi[k].scale(c);
    &(&t(0, &a) + &t(1, &r2)) - &(&t(2, &a) + &t(3, &r2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    /// Per corner: `φ + φᶜ` (scalar part doubled) and `φφᶜ`.
    pub nullity: [(CRational, CRational); 4],
    pub linear_relation: CQuat,
    /// `CR(P) − CR(φ)`, or `None` when either cross ratio is degenerate.
    pub cross_ratio: Option<CRational>,
    pub cross_ratio_degenerate: bool,
}

impl ConditionReport {
    pub fn nullity_ok(&self) -> bool {
        self.nullity
            .iter()
            .all(|(a, b)| Scalar::is_zero(a) && Scalar::is_zero(b))
    }

    pub fn linear_relation_ok(&self) -> bool {
        self.linear_relation.is_zero()
    }

    pub fn cross_ratio_ok(&self) -> bool {
        self.cross_ratio.as_ref().is_some_and(Scalar::is_zero)
    }

    pub fn all_ok(&self) -> bool {
        self.nullity_ok() && self.linear_relation_ok() && self.cross_ratio_ok()
    }
}

pub fn check_conditions(rect: &RectangleDomain, data: &CornerData) -> ConditionReport {
    let nullity = core::array::from_fn(|k| {
        let p = &data.phi[k];
        ((p + &p.conj_quat()).c[0].clone(), p.snorm())
    });
    let linear_relation = linear_relation_defect(rect, &data.phi);
    let params: Option<Vec<NullParam>> = data
        .phi
        .iter()
        .map(|p| null_param(p).ok().map(|x| x.0))
        .collect();
    let vertices: Vec<NullParam> = rect.p.iter().cloned().map(NullParam::affine).collect();
    let cr = params.and_then(|q| {
        let lhs = cross_ratio(&vertices[0], &vertices[1], &vertices[2], &vertices[3]).ok()?;
        let rhs = cross_ratio(&q[0], &q[1], &q[2], &q[3]).ok()?;
        Some(&lhs - &rhs)
    });
    ConditionReport {
        nullity,
        linear_relation,
        cross_ratio_degenerate: cr.is_none(),
        cross_ratio: cr,
    }
}

/// Scales `ν₀..ν₃` with `Σ ±ν_ℓ·d_ℓ` satisfying the linear relation,
/// normalized to `ν₃ = 1` (or the first nonzero entry).
pub fn solve_scales(rect: &RectangleDomain, directions: &[CQuat; 4]) -> Result<[CRational; 4]> {
    for d in directions {
        if d.is_zero() || !Scalar::is_zero(&d.snorm()) || !d.is_pure_vector() {
            return Err(Error::NotNull);
        }
    }
    let a = CRational::real(rect.abs_r_squared());
    let r2 = rect.r_squared();
    let coef = [a.clone(), r2.clone(), -a, -r2];
    let rows: Vec<Vec<CRational>> = (1..4)
        .map(|l| (0..4).map(|k| &coef[k] * &directions[k].c[l]).collect())
        .collect();
    let ns = null_space(&rows);
    match ns.len() {
        0 => return Err(Error::NoSolution),
        1 => {}
        _ => return Err(Error::NonUniqueBeyondScale),
    }
    let nu = &ns[0];
    if nu.iter().any(Scalar::is_zero) {
        return Err(Error::NoSolution);
    }
    let inv = nu[3].inv()?;
    Ok(core::array::from_fn(|k| &nu[k] * &inv))
}

/// Projective map `[z : 1] ↦ [m₀₀z + m₀₁ : m₁₀z + m₁₁]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusMap {
    pub m: [[CRational; 2]; 2],
}

impl MobiusMap {
    pub fn identity() -> Self {
        let (o, z) = (CRational::one(), CRational::zero());
        MobiusMap {
            m: [[o.clone(), z.clone()], [z, o]],
        }
    }

    pub fn apply(&self, p: &NullParam) -> NullParam {
        let m = &self.m;
        NullParam::new(
            &m[0][0] * &p.s + &m[0][1] * &p.t,
            &m[1][0] * &p.s + &m[1][1] * &p.t,
        )
    }

    /// Equality up to a nonzero scalar factor.
    pub fn projectively_eq(&self, o: &MobiusMap) -> bool {
        let a = self.m.iter().flatten();
        let b = o.m.iter().flatten();
        let pairs: Vec<_> = a.zip(b).collect();
        pairs
            .iter()
            .all(|(x, y)| pairs.iter().all(|(u, w)| *x * *w == *y * *u))
    }

    /// `s(z)` and `t(z)` as linear polynomials.
    pub fn linear_parts(&self) -> (CLaurent, CLaurent) {
        let m = &self.m;
        (
            CLaurent::from_terms([(1, m[0][0].clone()), (0, m[0][1].clone())]),
            CLaurent::from_terms([(1, m[1][0].clone()), (0, m[1][1].clone())]),
        )
    }
}

/// Matrix sending `e₁, e₂, e₁+e₂` to multiples of `x₀, x₁, x₂`.
fn frame(x: &[NullParam; 3]) -> Result<[[CRational; 2]; 2]> {
    let b = [
        [x[0].s.clone(), x[1].s.clone()],
        [x[0].t.clone(), x[1].t.clone()],
    ];
    let inv = inverse2(&b).ok_or(Error::DegenerateTuple)?;
    let alpha = &inv[0][0] * &x[2].s + &inv[0][1] * &x[2].t;
    let beta = &inv[1][0] * &x[2].s + &inv[1][1] * &x[2].t;
    if Scalar::is_zero(&alpha) || Scalar::is_zero(&beta) {
        return Err(Error::DegenerateTuple);
    }
    Ok([
        [&b[0][0] * &alpha, &b[0][1] * &beta],
        [&b[1][0] * &alpha, &b[1][1] * &beta],
    ])
}

/// The projective map with `f(P_ℓ) = [s_ℓ : t_ℓ]` for `ℓ = 0, 1, 2`, checked
/// at `ℓ = 3`.
pub fn mobius_from_corners(rect: &RectangleDomain, params: &[NullParam; 4]) -> Result<MobiusMap> {
    let src: [NullParam; 4] = core::array::from_fn(|k| NullParam::affine(rect.p[k].clone()));
    let bs = frame(&[src[0].clone(), src[1].clone(), src[2].clone()])?;
    let bt = frame(&[params[0].clone(), params[1].clone(), params[2].clone()])?;
    let m = MobiusMap {
        m: mul2(&bt, &inverse2(&bs).ok_or(Error::DegenerateTuple)?),
    };
    for k in 0..4 {
        if !m.apply(&src[k]).projectively_eq(&params[k]) {
            return Err(Error::CrossRatioMismatch);
        }
    }
    Ok(m)
}

/// Output of [`linear_preimage`].
#[derive(Clone, Debug, PartialEq)]
pub struct LinearPatch {
    pub pair: PreimagePair,
    pub params: [NullParam; 4],
    pub scales: [CRational; 4],
    /// `None` for constant data.
    pub mobius: Option<MobiusMap>,
}

/// A degree-one (or constant) real-coefficient `A` and constant `λ` with
/// `λ·A(P_ℓ)·L·A(P_ℓ)ᶜ = φ_ℓ` for all four corners. `λ = 1` whenever the
/// common scale factor is a square in ℚ(ı).
pub fn linear_preimage(rect: &RectangleDomain, data: &CornerData) -> Result<LinearPatch> {
    let report = check_conditions(rect, data);
    if !report.nullity_ok() {
        return Err(Error::ConditionsViolated(
            "corner values are not null vectors",
        ));
    }
    if !report.linear_relation_ok() {
        return Err(Error::ConditionsViolated("linear relation"));
    }
    let mut params = Vec::with_capacity(4);
    let mut scales = Vec::with_capacity(4);
    for p in &data.phi {
        let (np, nu) = null_param(p)?;
        params.push(np);
        scales.push(nu);
    }
    let params: [NullParam; 4] = params.try_into().expect("four corners");
    let scales: [CRational; 4] = scales.try_into().expect("four corners");

    let constant = params.iter().all(|p| p.projectively_eq(&params[0]));
    let (a, mobius) = if constant {
        if data.phi.iter().any(|p| p != &data.phi[0]) {
            return Err(Error::ConditionsViolated("cross ratio is degenerate"));
        }
        let p = &params[0];
        let a = QLaurent::constant(CQuat::new(
            p.s.clone(),
            p.t.clone(),
            CRational::zero(),
            CRational::zero(),
        ));
        (a, None)
    } else {
        if !report.cross_ratio_ok() {
            return Err(Error::ConditionsViolated("cross ratio"));
        }
        let m = mobius_from_corners(rect, &params)?;
        let (s, t) = m.linear_parts();
        let a = QLaurent::from_components([s, t, CLaurent::zero(), CLaurent::zero()]);
        (a, Some(m))
    };

    let phi = sandwich_l(&a);
    let at0 = phi.eval(&rect.p[0])?;
    let l = (1..4)
        .find(|&l| !Scalar::is_zero(&at0.c[l]))
        .ok_or(Error::NoSolution)?;
    let mu = data.phi[0].c[l].checked_div(&at0.c[l])?;
    let (a, lambda) = match mu.sqrt_exact() {
        Some(r) => (a.scale(&r), CRational::one()),
        None => (a, mu),
    };
    let mut b = real_preimage(&a);
    if first_sign_negative(&b) {
        b = -b;
    }
    let pair = PreimagePair::new(b, RationalScale::laurent(CLaurent::constant(lambda)));
    let phi = pair.phi()?;
    for k in 0..4 {
        if phi.eval(&rect.p[k])? != data.phi[k] {
            return Err(Error::ConditionsViolated("corner values not reproduced"));
        }
    }
    Ok(LinearPatch {
        pair,
        params,
        scales,
        mobius,
    })
}

fn first_sign_negative(a: &QLaurent) -> bool {
    a.terms()
        .flat_map(|(_, q)| q.c.to_vec())
        .find(|c| !Scalar::is_zero(c))
        .is_some_and(|c| {
            if c.re.is_zero() {
                c.im.is_negative()
            } else {
                c.re.is_negative()
            }
        })
}

/// Builds the patch surface `X = Re ∫ λ·A·L·Aᶜ` over the rectangle.
pub fn patch(
    rect: &RectangleDomain,
    data: &CornerData,
) -> Result<(LinearPatch, SurfaceSpec, ClosedFormSurface)> {
    let lp = linear_preimage(rect, data)?;
    let curve = IsotropicCurve::new(lp.pair.phi()?)?;
    let spec = SurfaceSpec::new(curve, rect.bounding_domain()?);
    let surface = integrate_surface(&spec)?;
    Ok((lp, spec, surface))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::{BiPoly, SurfaceExpr};

    fn c(re: i64, im: i64) -> CRational {
        CRational::from_ints(re, im)
    }

    #[test]
    fn null_points_of_the_example() {
        assert_eq!(null_point(&c(1, 0), &c(0, 0)).unwrap(), CQuat::null_l());
        assert_eq!(
            null_point(&c(0, 1), &c(1, 0)).unwrap(),
            CQuat::vector(c(0, 0), c(0, -2), c(-2, 0))
        );
        assert_eq!(
            null_point(&c(5, -2), &c(8, 0)).unwrap(),
            CQuat::vector(c(85, -20), c(20, -43), c(32, 80))
        );
        assert_eq!(null_point(&c(0, 0), &c(0, 0)), Err(Error::ZeroParameter));
    }

    #[test]
    fn null_param_inverse() {
        let (p, nu) = null_param(&CQuat::null_l()).unwrap();
        assert_eq!((p, nu), (NullParam::new(c(1, 0), c(0, 0)), c(1, 0)));
        let phi = CQuat::vector(c(5, 0), c(0, -3), c(0, 4));
        let (p, nu) = null_param(&phi).unwrap();
        assert_eq!((p, nu), (NullParam::new(c(1, 0), c(2, 0)), c(1, 0)));
        assert_eq!(null_param(&CQuat::unit_i()), Err(Error::NotNull));
        assert_eq!(null_param(&CQuat::one()), Err(Error::NotVectorial));
        // s = 0 branch
        let (p, _) = null_param(&null_point(&c(0, 0), &c(3, 1)).unwrap()).unwrap();
        assert_eq!(p, NullParam::new(c(0, 0), c(1, 0)));
    }

    #[test]
    fn cross_ratio_convention() {
        let x = NullParam::affine(c(3, 2));
        let one = NullParam::affine(c(1, 0));
        let zero = NullParam::affine(c(0, 0));
        let inf = NullParam::infinity();
        assert_eq!(cross_ratio(&x, &one, &zero, &inf).unwrap(), c(3, 2));
        assert_eq!(cross_ratio(&x, &x, &zero, &inf).unwrap(), c(1, 0));
        assert_eq!(
            cross_ratio(&zero, &one, &one, &inf),
            Err(Error::DegenerateTuple)
        );
        assert_eq!(cross_ratio(&x, &x, &x, &inf), Err(Error::DegenerateTuple));
    }

    #[test]
    fn rectangle_invariants() {
        let r = RectangleDomain::from_vertices([c(0, 0), c(1, 0), c(1, 2), c(0, 2)]).unwrap();
        assert_eq!(r.r_squared(), c(-3, 4));
        assert_eq!(r.abs_r_squared(), BigRational::from_integer(5.into()));
        assert!(RectangleDomain::from_vertices([c(0, 0), c(0, 2), c(1, 2), c(1, 0)]).is_err());
        assert!(RectangleDomain::from_vertices([c(0, 0), c(2, 0), c(3, 1), c(1, 1)]).is_err());
        let rot = CRational::from_fracs(3, 5, 4, 5);
        let q = RectangleDomain::from_legs(
            c(1, 1),
            BigRational::from_integer(2.into()),
            BigRational::from_integer(1.into()),
            rot.clone(),
        )
        .unwrap();
        assert_eq!(RectangleDomain::from_vertices(q.p.clone()).unwrap(), q);
        assert_eq!(q.rotation(), Some(rot));
        assert_eq!(q.to_local(&q.p[2]), Some(c(2, 1)));
    }

    #[test]
    fn constant_data_gives_constant_preimage() {
        let rect = RectangleDomain::unit_square();
        let l = CQuat::null_l();
        let data = CornerData {
            phi: [l.clone(), l.clone(), l.clone(), l.clone()],
        };
        let report = check_conditions(&rect, &data);
        assert!(report.linear_relation_ok() && report.cross_ratio_degenerate);
        let lp = linear_preimage(&rect, &data).unwrap();
        assert_eq!(lp.pair.a.degree(), Some(0));
        assert_eq!(sandwich_l(&lp.pair.a), QLaurent::constant(l));
    }

    #[test]
    fn duplicate_directions_are_not_unique() {
        let rect = RectangleDomain::unit_square();
        let l = CQuat::null_l();
        assert_eq!(
            solve_scales(&rect, &[l.clone(), l.clone(), l.clone(), l]),
            Err(Error::NonUniqueBeyondScale)
        );
    }

    fn ex1_rect() -> RectangleDomain {
        RectangleDomain::from_vertices([c(0, 0), c(1, 0), c(1, 2), c(0, 2)]).unwrap()
    }

    fn ex1_directions() -> [CQuat; 4] {
        [
            null_point(&c(1, 0), &c(0, 0)).unwrap(),
            null_point(&c(0, 1), &c(1, 0)).unwrap(),
            null_point(&c(1, 0), &c(2, 0)).unwrap(),
            null_point(&c(5, -2), &c(8, 0)).unwrap(),
        ]
    }

    fn ex1_data(scale: i64) -> CornerData {
        let d = ex1_directions();
        let nu = solve_scales(&ex1_rect(), &d).unwrap();
        CornerData {
            phi: core::array::from_fn(|k| {
                d[k].scale(&nu[k].scale(&BigRational::from_integer(scale.into())))
            }),
        }
    }

    #[test]
    fn ex1_scales() {
        let nu = solve_scales(&ex1_rect(), &ex1_directions()).unwrap();
        assert_eq!(nu, [c(25, 0), c(-16, 0), c(12, -16), c(1, 0)]);
    }

    #[test]
    fn ex1_cross_ratios_agree() {
        let r = ex1_rect();
        let v: Vec<_> = r.p.iter().cloned().map(NullParam::affine).collect();
        let q = [
            NullParam::new(c(1, 0), c(0, 0)),
            NullParam::new(c(0, 1), c(1, 0)),
            NullParam::new(c(1, 0), c(2, 0)),
            NullParam::new(c(5, -2), c(8, 0)),
        ];
        let lhs = cross_ratio(&v[0], &v[1], &v[2], &v[3]).unwrap();
        assert_eq!(lhs, cross_ratio(&q[0], &q[1], &q[2], &q[3]).unwrap());
        assert!(check_conditions(&r, &ex1_data(1)).all_ok());
    }

    #[test]
    fn ex1_mobius_and_preimage() {
        let rect = ex1_rect();
        let lp = linear_preimage(&rect, &ex1_data(25)).unwrap();
        let want = MobiusMap {
            m: [[c(-5, 0), c(25, 0)], [c(0, -20), c(0, 0)]],
        };
        assert!(lp.mobius.as_ref().unwrap().projectively_eq(&want));
        let a = QLaurent::from_terms([
            (1, CQuat::new(c(-5, 0), c(0, 0), c(-20, 0), c(0, 0))),
            (0, CQuat::scalar(c(25, 0))),
        ]);
        assert_eq!(lp.pair.a, a);
        assert_eq!(lp.pair.lambda, RationalScale::one());

        // the ν₃ = 1 member of the family yields A/5
        let lp1 = linear_preimage(&rect, &ex1_data(1)).unwrap();
        assert_eq!(lp1.pair.a, a.scale(&CRational::from_fracs(1, 5, 0, 1)));
    }

    #[test]
    fn ex1_surface() {
        let (_, _, x) = patch(&ex1_rect(), &ex1_data(25)).unwrap();
        let k = crate::scalar::rat(25, 3);
        let want = [
            BiPoly::from_ints(&[(3, 0, -15), (1, 2, 45), (2, 0, -15), (0, 2, 15), (1, 0, 75)]),
            BiPoly::from_ints(&[(2, 1, -51), (0, 3, 17), (1, 1, 30), (0, 1, -75)]),
            BiPoly::from_ints(&[(3, 0, -8), (1, 2, 24), (2, 0, 60), (0, 2, -60)]),
        ];
        for i in 0..3 {
            assert_eq!(
                x.components()[i],
                SurfaceExpr::polynomial(want[i].scale(&k))
            );
        }
    }

    #[test]
    fn perturbed_corner_breaks_linear_relation() {
        let mut data = ex1_data(1);
        data.phi[1] = data.phi[1].scale(&CRational::from_fracs(101, 100, 0, 1));
        let r = check_conditions(&ex1_rect(), &data);
        assert!(r.nullity_ok() && !r.linear_relation_ok());
        assert!(matches!(
            linear_preimage(&ex1_rect(), &data),
            Err(Error::ConditionsViolated(_))
        ));
    }

    #[test]
    fn unit_scales_from_a_linear_preimage() {
        let rect = RectangleDomain::unit_square();
        let a = QLaurent::from_terms([
            (1, CQuat::from_ints([(1, 0), (0, 1), (2, 0), (0, 0)])),
            (0, CQuat::unit_k()),
        ]);
        let phi = sandwich_l(&a);
        let d: [CQuat; 4] = core::array::from_fn(|k| phi.eval(&rect.p[k]).unwrap());
        assert_eq!(
            solve_scales(&rect, &d).unwrap(),
            core::array::from_fn(|_| c(1, 0))
        );
    }

    #[test]
    fn identity_mobius() {
        let rect = ex1_rect();
        let params: [NullParam; 4] = core::array::from_fn(|k| NullParam::affine(rect.p[k].clone()));
        assert!(mobius_from_corners(&rect, &params)
            .unwrap()
            .projectively_eq(&MobiusMap::identity()));
        let mut bad = params.clone();
        bad[3] = NullParam::affine(c(7, 7));
        assert_eq!(
            mobius_from_corners(&rect, &bad),
            Err(Error::CrossRatioMismatch)
        );
    }
}
