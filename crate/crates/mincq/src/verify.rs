//! Verification reports for documents and corner data.

use std::fmt::{self, Write};

use mincq_core::patch::{
    check_conditions, solve_scales, ConditionReport, CornerData, RectangleDomain,
};
use mincq_core::poly::QLaurent;
use mincq_core::surface::{integrate_surface, ClosedFormSurface, Domain, SurfaceSpec};
use mincq_core::weierstrass::{isotropy_defect, IsotropicCurve};
use mincq_core::{CQuat, Error, Scalar};

use crate::error::{CliError, CliResult};
use crate::export::fmt_f64;
use crate::format::{CornerFile, Document, Representation};

/// Tolerances for the sampled geometry.
pub const H_TOL: f64 = 1e-8;
pub const CONFORMAL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<String>,
    pub defects: Vec<String>,
}

impl Report {
    pub fn info(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn defect(&mut self, s: impl Into<String>) {
        let s = s.into();
        self.lines.push(format!("DEFECT {s}"));
        self.defects.push(s);
    }

    pub fn check(&mut self, ok: bool, s: impl Into<String>) {
        if ok {
            self.info(format!("ok {}", s.into()));
        } else {
            self.defect(s);
        }
    }

    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn extend(&mut self, o: Report) {
        self.lines.extend(o.lines);
        self.defects.extend(o.defects);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Maxima of the sampled geometry over a grid.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GeometryStats {
    pub samples: usize,
    pub max_h: f64,
    pub max_f: f64,
    pub max_e_minus_g: f64,
    pub max_e: f64,
    pub max_harmonic: f64,
}

pub fn geometry_stats(x: &ClosedFormSurface, n: usize) -> CliResult<GeometryStats> {
    let d = x.domain;
    let mut st = GeometryStats::default();
    for v in Domain::samples(d.v0, d.v1, n) {
        for u in Domain::samples(d.u0, d.u1, n) {
            let r = x.geometry_report(u, v)?;
            st.samples += 1;
            st.max_h = st.max_h.max(r.mean_curvature.abs());
            st.max_f = st.max_f.max(r.f_first.abs());
            st.max_e_minus_g = st.max_e_minus_g.max((r.e_first - r.g_first).abs());
            st.max_e = st.max_e.max(r.e_first.abs());
            st.max_harmonic = st.max_harmonic.max(r.harmonic_residual);
        }
    }
    Ok(st)
}

/// Default sample domain: `[−1,1]²`, or a square away from the pole at 0.
pub fn default_domain(phi: &QLaurent) -> Domain {
    if phi.is_polynomial() {
        Domain::square(1.0)
    } else {
        Domain {
            u0: 0.5,
            u1: 1.5,
            v0: -0.5,
            v1: 0.5,
        }
    }
}

pub fn verify_document(doc: &Document, grid: usize) -> CliResult<Report> {
    match doc {
        Document::Curve { repr, domain } => verify_curve(repr, *domain, grid),
        Document::Corners(c) => verify_corners(c),
    }
}

fn verify_curve(repr: &Representation, domain: Option<[f64; 4]>, grid: usize) -> CliResult<Report> {
    let mut rep = Report::default();
    rep.info(format!("representation {:?}", repr.kind()).to_lowercase());
    if let Representation::Pair(p) = repr {
        rep.info(format!("A = {}", p.a));
        rep.info(format!("lambda = {}", p.lambda));
    }
    let phi = match repr.raw_phi() {
        Ok(p) => p,
        Err(CliError::Core(Error::InexactDivision)) => {
            rep.defect("lambda·A·L·Aᶜ is not a Laurent polynomial");
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    rep.info(format!("phi = {phi}"));

    let defect = isotropy_defect(&phi);
    rep.check(defect.is_zero(), format!("isotropy defect {defect}"));
    let scalar = phi.component(0);
    rep.check(scalar.is_zero(), format!("scalar part {scalar}"));

    let residue = phi.residue_at_zero();
    if residue.is_zero() {
        rep.info("residue at 0: none");
    } else {
        let single_valued = residue.c[1..]
            .iter()
            .all(|c| c.im == num_rational::BigRational::default());
        rep.info(format!("NonzeroResidue at 0: {residue}"));
        rep.info(if single_valued {
            "real part is single-valued (logarithmic terms only)"
        } else {
            "real part has a period around 0"
        });
    }

    if !rep.passed() {
        return Ok(rep);
    }
    let domain = match domain {
        Some([u0, u1, v0, v1]) => Domain::new(u0, u1, v0, v1)?,
        None => default_domain(&phi),
    };
    let curve = IsotropicCurve::new(phi)?;
    let x = integrate_surface(&SurfaceSpec::new(curve, domain))?;
    rep.extend(geometry_section(&x, grid)?);
    Ok(rep)
}

pub fn geometry_section(x: &ClosedFormSurface, grid: usize) -> CliResult<Report> {
    let mut rep = Report::default();
    let d = x.domain;
    let st = geometry_stats(x, grid)?;
    rep.info(format!(
        "grid {grid}x{grid} on [{}, {}] x [{}, {}]",
        fmt_f64(d.u0),
        fmt_f64(d.u1),
        fmt_f64(d.v0),
        fmt_f64(d.v1)
    ));
    let scale = st.max_e.max(1.0);
    rep.check(st.max_h < H_TOL, format!("max |H| = {:.3e}", st.max_h));
    rep.check(
        st.max_f < CONFORMAL_TOL * scale,
        format!("max |F| = {:.3e}", st.max_f),
    );
    rep.check(
        st.max_e_minus_g < CONFORMAL_TOL * scale,
        format!("max |E-G| = {:.3e}", st.max_e_minus_g),
    );
    rep.info(format!("max harmonic residual = {:.3e}", st.max_harmonic));
    Ok(rep)
}

/// Corner values from a corner file: `phi` directly, or `scale·direction`
/// with the scales solved from the linear relation when absent.
pub fn corner_values(c: &CornerFile, rect: &RectangleDomain) -> CliResult<[CQuat; 4]> {
    if let Some(phi) = &c.phi {
        return Ok(phi.clone());
    }
    let dirs = c
        .directions
        .as_ref()
        .ok_or_else(|| CliError::Usage("corner file needs `phi` or `directions`".into()))?;
    let scales = match &c.scales {
        Some(s) => s.clone(),
        None => solve_scales(rect, dirs)?,
    };
    Ok(std::array::from_fn(|k| dirs[k].scale(&scales[k])))
}

pub fn rect_of(c: &CornerFile) -> CliResult<RectangleDomain> {
    match &c.rect {
        Some(p) => Ok(RectangleDomain::from_vertices(p.clone())?),
        None => Ok(RectangleDomain::unit_square()),
    }
}

pub fn condition_section(rect: &RectangleDomain, values: &[CQuat; 4]) -> Report {
    let cr = check_conditions(
        rect,
        &CornerData {
            phi: values.clone(),
        },
    );
    condition_lines(rect, values, &cr)
}

fn condition_lines(rect: &RectangleDomain, values: &[CQuat; 4], cr: &ConditionReport) -> Report {
    let mut rep = Report::default();
    let mut verts = String::new();
    for (k, p) in rect.p.iter().enumerate() {
        let _ = write!(verts, "{}P{k} = {p}", if k > 0 { ", " } else { "" });
    }
    rep.info(format!("rectangle {verts}"));
    for (k, v) in values.iter().enumerate() {
        rep.info(format!("phi{k} = {v}"));
    }
    for (k, (scalar, snorm)) in cr.nullity.iter().enumerate() {
        rep.check(
            Scalar::is_zero(scalar) && Scalar::is_zero(snorm),
            format!("corner {k} null: scalar {scalar}, vector snorm {snorm}"),
        );
    }
    rep.check(
        cr.linear_relation_ok(),
        format!("linear relation defect {}", cr.linear_relation),
    );
    match &cr.cross_ratio {
        Some(c) => rep.check(cr.cross_ratio_ok(), format!("cross ratio defect {c}")),
        // only constant corner data has a linear preimage in this case
        None => rep.check(
            values.iter().all(|v| v == &values[0]),
            "cross ratio undefined: corner directions do not give three distinct points",
        ),
    }
    rep
}

fn verify_corners(c: &CornerFile) -> CliResult<Report> {
    let rect = rect_of(c)?;
    let values = corner_values(c, &rect)?;
    Ok(condition_section(&rect, &values))
}
