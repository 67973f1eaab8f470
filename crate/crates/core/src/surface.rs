//! Isothermal minimal surfaces `X = c + Re ∫Φ` (or `Im ∫Φ`): exact closed
//! forms, partial derivatives from `Φ = X_u − ıX_v`, curvature reports,
//! singularities of `λ`, and grid meshes.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, Zero};

use crate::bivariate::{BiPoly, SurfaceExpr};
use crate::error::{Error, Result};
use crate::poly::{eval_f64_terms, AntiderivativeForm, QLaurent};
use crate::quat::{CQuat, FQuat};
use crate::roots::roots_with_multiplicity;
use crate::scalar::CRational;
use crate::weierstrass::{IsotropicCurve, RationalScale};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Part {
    #[default]
    Real,
    Imaginary,
}

/// Relation between `Φ` and the partial derivatives. `Standard` is
/// `Φ = X_u − ıX_v`; `Doubled` reads `X_u = 2 Re Φ`, i.e. `X = c + 2 Re ∫Φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    Doubled,
}

impl Convention {
    pub fn factor(self) -> i64 {
        match self {
            Convention::Standard => 1,
            Convention::Doubled => 2,
        }
    }
}

/// Closed rectangle `[u0, u1] × [v0, v1]` in the parameter plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Domain {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Result<Self> {
        if !(u0 < u1 && v0 < v1) || ![u0, u1, v0, v1].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidGrid);
        }
        Ok(Domain { u0, u1, v0, v1 })
    }

    pub fn square(r: f64) -> Self {
        Domain {
            u0: -r,
            u1: r,
            v0: -r,
            v1: r,
        }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.re >= self.u0 - tol
            && z.re <= self.u1 + tol
            && z.im >= self.v0 - tol
            && z.im <= self.v1 + tol
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(Complex64::new(0.0, 0.0), 0.0)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.u0 + self.u1), 0.5 * (self.v0 + self.v1))
    }

    pub fn diameter(&self) -> f64 {
        Float::hypot(self.u1 - self.u0, self.v1 - self.v0)
    }

    /// `n` equally spaced points of `[a, b]`, endpoints included.
    pub fn samples(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSpec {
    pub phi: IsotropicCurve,
    pub base_point: [BigRational; 3],
    pub part: Part,
    pub convention: Convention,
    pub domain: Domain,
    /// Skip the pole check; the closed form is still computed but sampled
    /// values near the pole are meaningless.
    pub allow_pole: bool,
}

impl SurfaceSpec {
    pub fn new(phi: IsotropicCurve, domain: Domain) -> Self {
        SurfaceSpec {
            phi,
            base_point: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
            part: Part::Real,
            convention: Convention::Standard,
            domain,
            allow_pole: false,
        }
    }

    pub fn with_part(mut self, part: Part) -> Self {
        self.part = part;
        self
    }

    pub fn with_convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }
}

#[derive(Clone, Debug)]
pub struct ClosedFormSurface {
    pub antiderivative: AntiderivativeForm<CQuat>,
    pub base_point: [BigRational; 3],
    pub part: Part,
    pub convention: Convention,
    pub domain: Domain,
    components: [SurfaceExpr; 3],
    phi: QLaurent,
    phi_f: Vec<(i32, FQuat)>,
    dphi_f: Vec<(i32, FQuat)>,
    arg_branch: f64,
}

pub fn integrate_surface(spec: &SurfaceSpec) -> Result<ClosedFormSurface> {
    let phi = spec.phi.phi();
    let has_pole = !phi.is_polynomial();
    if has_pole && spec.domain.contains_origin() && !spec.allow_pole {
        return Err(Error::PoleInDomain);
    }
    let poles = if has_pole {
        alloc::vec![CRational::from(0)]
    } else {
        Vec::new()
    };
    let anti = phi.antiderivative_at(&poles)?;
    let factor = BigRational::from_integer(spec.convention.factor().into());
    let components: [SurfaceExpr; 3] = core::array::from_fn(|k| {
        let e = component_expr(&anti, k + 1, spec.part).scale(&factor);
        e + SurfaceExpr::polynomial(BiPoly::constant(spec.base_point[k].clone()))
    });
    let c = spec.domain.center();
    Ok(ClosedFormSurface {
        antiderivative: anti,
        base_point: spec.base_point.clone(),
        part: spec.part,
        convention: spec.convention,
        domain: spec.domain,
        components,
        phi_f: phi.to_f64_terms(),
        dphi_f: phi.derivative().to_f64_terms(),
        phi: phi.clone(),
        arg_branch: Float::atan2(c.im, c.re),
    })
}

/// The requested part of component `l` of the antiderivative at `u + ıv`.
fn component_expr(anti: &AntiderivativeForm<CQuat>, l: usize, part: Part) -> SurfaceExpr {
    let mut acc = SurfaceExpr::polynomial(BiPoly::zero());
    for (e, q) in anti.principal.terms() {
        let c = &q.c[l];
        let term = if e >= 0 {
            let (re, im) = BiPoly::re_im_of_power(c, e as u32);
            SurfaceExpr::polynomial(pick(part, re, im))
        } else {
            // c·z⁻ᵐ = c·z̄ᵐ / (u²+v²)ᵐ, and z̄ᵐ = R − ıI with R + ıI = zᵐ.
            let m = (-e) as u32;
            let (r, i) = BiPoly::re_im_of_power(&CRational::from(1), m);
            let re = &r.scale(&c.re) + &i.scale(&c.im);
            let im = &r.scale(&c.im) - &i.scale(&c.re);
            SurfaceExpr::rational(pick(part, re, im), m)
        };
        acc = acc + term;
    }
    let half = BigRational::new(1.into(), 2.into());
    for (_, res) in &anti.log_terms {
        // log z = ½ ln(u²+v²) + ı arg z
        let r = &res.c[l];
        let (log_c, arg_c) = match part {
            Part::Real => (&r.re * &half, -r.im.clone()),
            Part::Imaginary => (&r.im * &half, r.re.clone()),
        };
        let mut t = SurfaceExpr::polynomial(BiPoly::zero()).with_log(log_c);
        t.arg_coeff = arg_c;
        acc = acc + t;
    }
    acc
}

fn pick(part: Part, re: BiPoly, im: BiPoly) -> BiPoly {
    match part {
        Part::Real => re,
        Part::Imaginary => im,
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// First and second fundamental forms and curvatures at one point, with
/// `e = −⟨X_uu, N⟩` and shape operator `−II·I⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometryReport {
    pub u: f64,
    pub v: f64,
    pub e_first: f64,
    pub f_first: f64,
    pub g_first: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    pub k1: f64,
    pub k2: f64,
    pub normal: [f64; 3],
    /// `|X_uu + X_vv − 2EH·N|`.
    pub harmonic_residual: f64,
}

impl ClosedFormSurface {
    /// `X₁, X₂, X₃` as exact expressions.
    pub fn components(&self) -> &[SurfaceExpr; 3] {
        &self.components
    }

    pub fn phi(&self) -> &QLaurent {
        &self.phi
    }

    pub fn eval(&self, u: f64, v: f64) -> [f64; 3] {
        core::array::from_fn(|k| self.components[k].eval_f64(u, v, self.arg_branch))
    }

    fn check_point(&self, u: f64, v: f64) -> Result<Complex64> {
        let z = Complex64::new(u, v);
        if !self.phi.is_polynomial() && z.norm() == 0.0 {
            return Err(Error::PoleEvaluation);
        }
        Ok(z)
    }

    fn scaled(&self, terms: &[(i32, FQuat)], z: Complex64) -> FQuat {
        let w = eval_f64_terms(terms, z);
        w.scale(&Complex64::new(self.convention.factor() as f64, 0.0))
    }

    /// `(X_u, X_v)`.
    pub fn partials(&self, u: f64, v: f64) -> Result<([f64; 3], [f64; 3])> {
        let z = self.check_point(u, v)?;
        let w = self.scaled(&self.phi_f, z);
        let (re, im) = (w.re_vector(), w.im_vector());
        Ok(match self.part {
            Part::Real => (re, im.map(|x| -x)),
            Part::Imaginary => (im, re),
        })
    }

    /// `(X_uu, X_uv, X_vv)` from `Φ′`.
    pub fn second_partials(&self, u: f64, v: f64) -> Result<([f64; 3], [f64; 3], [f64; 3])> {
        let z = self.check_point(u, v)?;
        let w = self.scaled(&self.dphi_f, z);
        let (re, im) = (w.re_vector(), w.im_vector());
        Ok(match self.part {
            Part::Real => (re, im.map(|x| -x), re.map(|x| -x)),
            Part::Imaginary => (im, re, im.map(|x| -x)),
        })
    }

    pub fn geometry_report(&self, u: f64, v: f64) -> Result<GeometryReport> {
        let (xu, xv) = self.partials(u, v)?;
        let (xuu, xuv, xvv) = self.second_partials(u, v)?;
        let (ef, ff, gf) = (dot(&xu, &xu), dot(&xu, &xv), dot(&xv, &xv));
        let n = cross(&xu, &xv);
        let nn = norm(&n);
        let det1 = ef * gf - ff * ff;
        if nn <= 1e-14 * (ef + gf).max(f64::MIN_POSITIVE) || det1 <= 0.0 {
            return Err(Error::DegenerateNormal);
        }
        let normal = n.map(|x| x / nn);
        let e = -dot(&xuu, &normal);
        let f = -dot(&xuv, &normal);
        let g = -dot(&xvv, &normal);
        let h = -(e * gf - 2.0 * f * ff + g * ef) / (2.0 * det1);
        let k = (e * g - f * f) / det1;
        let disc = (h * h - k).max(0.0).sqrt();
        let lap: [f64; 3] = core::array::from_fn(|i| xuu[i] + xvv[i] - 2.0 * ef * h * normal[i]);
        Ok(GeometryReport {
            u,
            v,
            e_first: ef,
            f_first: ff,
            g_first: gf,
            e,
            f,
            g,
            mean_curvature: h,
            gauss_curvature: k,
            k1: h + disc,
            k2: h - disc,
            normal,
            harmonic_residual: norm(&lap),
        })
    }
}

/// `X_u × X_v` for the surface of `λΦ`, via
/// `X_u × X_v = −(ı|λ|²/2)(Φ × Φ̄)`; cross-checked against the direct
/// product of the partial derivatives.
pub fn normal_field(phi: &QLaurent, lambda: &RationalScale, u: f64, v: f64) -> Result<[f64; 3]> {
    let z = Complex64::new(u, v);
    if (!phi.is_polynomial() || lambda.den.degree() != Some(0)) && z.norm() == 0.0 {
        return Err(Error::PoleEvaluation);
    }
    let p = phi.eval_f64(z);
    let l = lambda.eval_f64(z);
    let pc = p.conj_complex();
    let x = p.cross_vec(&pc);
    let coef = Complex64::new(0.0, -0.5 * l.norm_sqr());
    let formula = [x.c[1] * coef, x.c[2] * coef, x.c[3] * coef];
    let w = p.scale(&l);
    let direct = cross(&w.re_vector(), &w.im_vector().map(|t| -t));
    let scale = norm(&direct).max(1.0);
    for k in 0..3 {
        if (formula[k].re - direct[k]).abs() > 1e-9 * scale || formula[k].im.abs() > 1e-9 * scale {
            return Err(Error::NormalMismatch);
        }
    }
    Ok(direct)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Singularity {
    pub root: Complex64,
    pub multiplicity: u32,
}

/// Zeros of `λ` (in `domain`, if given) with multiplicities.
pub fn lambda_singularities(
    lambda: &RationalScale,
    domain: Option<&Domain>,
) -> Result<Vec<Singularity>> {
    if lambda.num.is_zero() {
        return Err(Error::BothZero);
    }
    let num = lambda
        .num
        .shift(-lambda.num.valuation().unwrap_or(0).min(0));
    let mut out: Vec<Singularity> = roots_with_multiplicity(&num)?
        .into_iter()
        .map(|(root, multiplicity)| Singularity { root, multiplicity })
        .filter(|s| domain.is_none_or(|d| d.contains(s.root, 1e-12)))
        .collect();
    out.sort_by(|a, b| {
        a.root
            .re
            .total_cmp(&b.root.re)
            .then(a.root.im.total_cmp(&b.root.im))
    });
    Ok(out)
}

/// Regular grid mesh. Vertices are stored row-major with `u` varying
/// fastest; quad `(r, c)` joins vertices `(r,c), (r,c+1), (r+1,c+1), (r+1,c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub nu: usize,
    pub nv: usize,
    pub params: Vec<(f64, f64)>,
    pub vertices: Vec<[f64; 3]>,
    pub quads: Vec<[usize; 4]>,
    /// Indices of vertices with a degenerate normal.
    pub degenerate: Vec<usize>,
}

/// Samples `x` on an `nu × nv` grid over its domain. Vertices nearest to each
/// point in `singular` (and vertices where `X_u × X_v` vanishes) are flagged.
pub fn mesh(x: &ClosedFormSurface, nu: usize, nv: usize, singular: &[Complex64]) -> Result<Mesh> {
    if nu < 2 || nv < 2 {
        return Err(Error::InvalidGrid);
    }
    let d = x.domain;
    if !x.phi.is_polynomial() && d.contains_origin() {
        return Err(Error::PoleInDomain);
    }
    let us = Domain::samples(d.u0, d.u1, nu);
    let vs = Domain::samples(d.v0, d.v1, nv);
    let mut params = Vec::with_capacity(nu * nv);
    let mut vertices = Vec::with_capacity(nu * nv);
    let mut degenerate = Vec::new();
    for &v in &vs {
        for &u in &us {
            let idx = params.len();
            params.push((u, v));
            vertices.push(x.eval(u, v));
            let (xu, xv) = x.partials(u, v)?;
            let scale = dot(&xu, &xu) + dot(&xv, &xv);
            if norm(&cross(&xu, &xv)) <= 1e-12 * scale.max(1e-300) || scale == 0.0 {
                degenerate.push(idx);
            }
        }
    }
    let (du, dv) = (
        (d.u1 - d.u0) / (nu - 1) as f64,
        (d.v1 - d.v0) / (nv - 1) as f64,
    );
    for s in singular.iter().filter(|s| d.contains(**s, 1e-12)) {
        let c = ((s.re - d.u0) / du).round() as usize;
        let r = ((s.im - d.v0) / dv).round() as usize;
        degenerate.push(r.min(nv - 1) * nu + c.min(nu - 1));
    }
    degenerate.sort_unstable();
    degenerate.dedup();
    let mut quads = Vec::with_capacity((nu - 1) * (nv - 1));
    for r in 0..nv - 1 {
        for c in 0..nu - 1 {
            let a = r * nu + c;
            quads.push([a, a + 1, a + 1 + nu, a + nu]);
        }
    }
    Ok(Mesh {
        nu,
        nv,
        params,
        vertices,
        quads,
        degenerate,
    })
}
