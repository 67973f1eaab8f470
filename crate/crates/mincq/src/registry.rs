//! Worked examples with their exact checks and output artifacts.

use std::fmt::Write;

use mincq_core::bivariate::{BiPoly, SurfaceExpr};
use mincq_core::patch::{null_point, patch, solve_scales, CornerData, MobiusMap, RectangleDomain};
use mincq_core::poly::{CLaurent, QLaurent};
use mincq_core::scalar::rat;
use mincq_core::surface::{integrate_surface, mesh, ClosedFormSurface, Domain, SurfaceSpec};
use mincq_core::sylvester::{
    classify_rank, classify_rank_f64, conjugacy_residual, solve_conjugator, RankClass,
};
use mincq_core::weierstrass::{sandwich_l, IsotropicCurve, PreimagePair, RationalScale};
use mincq_core::{CQuat, CRational};

use crate::error::{CliError, CliResult};
use crate::export::{geometry_csv, geometry_rows, mesh_to_obj};
use crate::expr::{eval_cquat, eval_fquat, eval_qlaurent, eval_scale, parse};
use crate::format::{Document, Representation};
use crate::verify::{condition_section, geometry_section, Report};

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn() -> CliResult<Outcome>,
}

/// A report plus named output files.
#[derive(Debug, Default)]
pub struct Outcome {
    pub report: Report,
    pub artifacts: Vec<(String, String)>,
}

impl Example {
    pub fn run(&self) -> CliResult<Outcome> {
        (self.run)()
    }
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "catenoid",
        summary: "catenoid conjugator, preimage pair and closed form",
        run: catenoid,
    },
    Example {
        name: "rational",
        summary: "rational minimal surface from λ = (z⁴+1)/(8z⁶)",
        run: rational,
    },
    Example {
        name: "richmond",
        summary: "Richmond surface conjugator with h = z²",
        run: richmond,
    },
    Example {
        name: "enneper",
        summary: "Enneper surface from A = z + j",
        run: enneper,
    },
    Example {
        name: "ex1",
        summary: "linear patch from four corner directions",
        run: ex1,
    },
    Example {
        name: "sylvester-rank3",
        summary: "Sylvester operator of rank 3",
        run: sylvester_rank3,
    },
];

pub fn names() -> Vec<&'static str> {
    EXAMPLES.iter().map(|e| e.name).collect()
}

pub fn find(name: &str) -> CliResult<&'static Example> {
    EXAMPLES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CliError::UnknownExample(name.to_string(), names().join(", ")))
}

fn q(s: &str) -> CliResult<QLaurent> {
    eval_qlaurent(&parse(s)?)
}

fn l() -> QLaurent {
    QLaurent::constant(CQuat::null_l())
}

fn closed_form_text(x: &ClosedFormSurface) -> String {
    let mut s = String::new();
    for (name, c) in ["x", "y", "z"].iter().zip(x.components()) {
        let _ = writeln!(s, "{name}(u,v) = {c}");
    }
    s
}

/// Closed form, OBJ mesh and geometry CSV for a surface.
fn surface_outputs(
    out: &mut Outcome,
    name: &str,
    x: &ClosedFormSurface,
    grid: usize,
) -> CliResult<()> {
    let m = mesh(x, grid, grid, &[])?;
    out.artifacts
        .push((format!("{name}.txt"), closed_form_text(x)));
    out.artifacts.push((format!("{name}.obj"), mesh_to_obj(&m)));
    out.artifacts
        .push((format!("{name}.csv"), geometry_csv(&geometry_rows(x, &m)?)));
    out.report.extend(geometry_section(x, grid)?);
    Ok(())
}

fn pair_file(out: &mut Outcome, name: &str, pair: &PreimagePair, domain: &Domain) {
    let doc = Document::Curve {
        repr: Representation::Pair(pair.clone()),
        domain: Some([domain.u0, domain.u1, domain.v0, domain.v1]),
    };
    out.artifacts
        .push((format!("{name}.pair.json"), doc.to_json_string()));
}

fn surface_of(phi: &QLaurent, domain: Domain) -> CliResult<ClosedFormSurface> {
    Ok(integrate_surface(&SurfaceSpec::new(
        IsotropicCurve::new(phi.clone())?,
        domain,
    ))?)
}

fn components_match(rep: &mut Report, x: &ClosedFormSurface, want: &[SurfaceExpr; 3]) {
    for k in 0..3 {
        rep.check(
            x.components()[k] == want[k],
            format!("component {} = {}", ["x", "y", "z"][k], x.components()[k]),
        );
    }
}

fn catenoid() -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let rep = &mut out.report;
    let phi = q("(i - I j)/2 - (i + I j)/(2z^2) - k/z")?;
    let a = q("(1 - 3z^2) i + I (1 - z^2) j + 2z k")?;
    let chi = a.shift(-2).scale(&CRational::from_fracs(1, 2, 0, 1));
    rep.info(format!("phi = {phi}"));
    rep.info(format!("chi = {chi}"));
    rep.check(
        conjugacy_residual(&phi, &chi, &l()).is_zero(),
        "phi chi - chi L = 0",
    );
    let lambda = eval_scale(&parse("1/(8z^4)")?)?;
    let pair = PreimagePair::new(a.clone(), lambda);
    rep.check(
        pair.certifies(&phi),
        format!("lambda A L Aᶜ = phi with lambda = {}", pair.lambda),
    );
    rep.check(
        a.qsnorm() == CLaurent::from_ints(&[(4, 8, 0)]),
        format!("Aˢ = {}", a.qsnorm()),
    );

    let domain = Domain::new(0.5, 2.0, 0.5, 2.0)?;
    let x = surface_of(&phi, domain)?;
    let h = rat(1, 2);
    let want = [
        SurfaceExpr::rational(
            BiPoly::from_ints(&[(3, 0, 1), (1, 2, 1), (1, 0, 1)]).scale(&h),
            1,
        ),
        SurfaceExpr::rational(
            BiPoly::from_ints(&[(2, 1, 1), (0, 3, 1), (0, 1, 1)]).scale(&h),
            1,
        ),
        SurfaceExpr::polynomial(BiPoly::zero()).with_log(rat(-1, 2)),
    ];
    components_match(rep, &x, &want);
    pair_file(&mut out, "catenoid", &pair, &domain);
    surface_outputs(&mut out, "catenoid", &x, 21)?;
    Ok(out)
}

fn rational() -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let rep = &mut out.report;
    let a = q("(1 - 3z^2) i + I (1 - z^2) j + 2z k")?;
    let pair = PreimagePair::new(a, eval_scale(&parse("(z^4 + 1)/(8z^6)")?)?);
    let phi = pair.phi()?;
    rep.info(format!("phi = {phi}"));
    let residue = phi.residue_at_zero();
    rep.check(residue.is_zero(), format!("residue at 0 = {residue}"));
    let anti = phi.antiderivative();
    let want = q(
        "(i + I j)/(6z^3) + k/(2z^2) - (i - I j)/(2z) - (i + I j) z/2 - k z^2/2 + (i - I j) z^3/6",
    )?;
    rep.check(
        anti.log_terms.is_empty() && anti.principal == want,
        format!("antiderivative = {}", anti.principal),
    );

    let domain = Domain::new(0.25, 2.0, 0.25, 2.0)?;
    let x = surface_of(&phi, domain)?;
    let rho = BiPoly::rho();
    let one = BiPoly::one();
    let (u, v) = (BiPoly::u(), BiPoly::v());
    let n1 = (&rho + &one)
        * u.clone()
        * BiPoly::from_ints(&[
            (6, 0, 1),
            (4, 2, -1),
            (2, 4, -5),
            (0, 6, -3),
            (4, 0, -4),
            (2, 2, -4),
            (2, 0, 1),
            (0, 2, -3),
        ]);
    let n2 = (&rho + &one)
        * BiPoly::from_ints(&[
            (6, 0, 3),
            (4, 2, 5),
            (2, 4, 1),
            (0, 6, -1),
            (2, 2, 4),
            (0, 4, 4),
            (2, 0, 3),
            (0, 2, -1),
        ])
        * v.clone();
    let n3 = rho.scale(&rat(-3, 1)) * (&u - &v) * (&u + &v) * (&rho - &one) * (&rho + &one);
    let s = rat(1, 6);
    let want = [n1, n2, n3].map(|n| SurfaceExpr::rational(n.scale(&s), 3));
    components_match(rep, &x, &want);
    pair_file(&mut out, "rational", &pair, &domain);
    surface_outputs(&mut out, "rational", &x, 25)?;
    Ok(out)
}

fn richmond() -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let rep = &mut out.report;
    let phi = q("z^2 (i + I j) + 2k + (I j - i)/z^2")?;
    let chi = solve_conjugator(&phi, &l(), &q("z^2")?)?;
    rep.info(format!("chi = {chi}"));
    rep.check(
        chi == q("z^4 (i + I j) + z^2 (i + I j + 2k) + I j - i")?,
        "chi = phi z² + z² L",
    );
    let qs = chi.qsnorm();
    rep.check(
        qs == CLaurent::from_ints(&[(2, -4, 0)]),
        format!("chiˢ = {qs}"),
    );
    let pair = PreimagePair::new(chi, RationalScale::reciprocal(&qs)?);
    rep.check(pair.certifies(&phi), "lambda chi L chiᶜ = phi");
    let domain = Domain::new(0.5, 1.5, -0.5, 0.5)?;
    let x = surface_of(&phi, domain)?;
    out.report
        .info(format!("closed form:\n{}", closed_form_text(&x).trim_end()));
    pair_file(&mut out, "richmond", &pair, &domain);
    surface_outputs(&mut out, "richmond", &x, 21)?;
    Ok(out)
}

fn enneper() -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let a = q("z + j")?;
    let domain = Domain::square(3.0);
    let x = surface_of(&sandwich_l(&a), domain)?;
    let third = rat(1, 3);
    let want = [
        BiPoly::from_ints(&[(1, 2, -1), (1, 0, -1)]) + BiPoly::monomial(third.clone(), 3, 0),
        BiPoly::from_ints(&[(2, 1, -1), (0, 1, -1)]) + BiPoly::monomial(third, 0, 3),
        BiPoly::from_ints(&[(0, 2, 1), (2, 0, -1)]),
    ]
    .map(SurfaceExpr::polynomial);
    components_match(&mut out.report, &x, &want);
    pair_file(
        &mut out,
        "enneper",
        &PreimagePair::new(a, RationalScale::one()),
        &domain,
    );
    surface_outputs(&mut out, "enneper", &x, 61)?;
    Ok(out)
}

fn ex1() -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let c = CRational::from_ints;
    let rect = RectangleDomain::from_vertices([c(0, 0), c(1, 0), c(1, 2), c(0, 2)])?;
    let d = [
        null_point(&c(1, 0), &c(0, 0))?,
        null_point(&c(0, 1), &c(1, 0))?,
        null_point(&c(1, 0), &c(2, 0))?,
        null_point(&c(5, -2), &c(8, 0))?,
    ];
    let nu = solve_scales(&rect, &d)?;
    let nu_want = [c(25, 0), c(-16, 0), c(12, -16), c(1, 0)];
    let scales: Vec<String> = nu.iter().map(ToString::to_string).collect();
    out.report
        .check(nu == nu_want, format!("scales ν = ({})", scales.join(", ")));

    // overall scale 25 of the one-parameter family
    let s = CRational::from(25);
    let data = CornerData {
        phi: std::array::from_fn(|k| d[k].scale(&(&nu[k] * &s))),
    };
    out.report.extend(condition_section(&rect, &data.phi));
    let (lp, spec, x) = patch(&rect, &data)?;
    let m = MobiusMap {
        m: [[c(-5, 0), c(25, 0)], [c(0, -20), c(0, 0)]],
    };
    let rep = &mut out.report;
    rep.check(
        lp.mobius.as_ref().is_some_and(|x| x.projectively_eq(&m)),
        "Möbius map s = 25 - 5z, t = -20ız",
    );
    rep.check(
        lp.pair.a == q("25 - (5 + 20j) z")?,
        format!("A = {}", lp.pair.a),
    );
    rep.check(
        lp.pair.lambda == RationalScale::one(),
        format!("lambda = {}", lp.pair.lambda),
    );
    let phi = sandwich_l(&lp.pair.a);
    let corners_ok = (0..4).all(|k| phi.eval(&rect.p[k]).is_ok_and(|v| v == data.phi[k]));
    rep.check(corners_ok, "Φ(P_l) = φ_l at all corners");
    let k = rat(25, 3);
    let want = [
        BiPoly::from_ints(&[(3, 0, -15), (1, 2, 45), (2, 0, -15), (0, 2, 15), (1, 0, 75)]),
        BiPoly::from_ints(&[(2, 1, -51), (0, 3, 17), (1, 1, 30), (0, 1, -75)]),
        BiPoly::from_ints(&[(3, 0, -8), (1, 2, 24), (2, 0, 60), (0, 2, -60)]),
    ]
    .map(|p| SurfaceExpr::polynomial(p.scale(&k)));
    components_match(rep, &x, &want);
    let conditions = out.report.to_string();
    out.artifacts
        .push(("ex1.conditions.txt".into(), conditions));
    pair_file(&mut out, "ex1", &lp.pair, &spec.domain);
    surface_outputs(&mut out, "ex1", &x, 9)?;
    Ok(out)
}

fn sylvester_rank3() -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let rep = &mut out.report;
    let (f, g) = (parse("I j + k")?, parse("I + sqrt(2)/2 (j + k)")?);
    let (ff, gf) = (eval_fquat(&f)?, eval_fquat(&g)?);
    let class = classify_rank_f64(&ff, &gf, 1e-9);
    rep.check(
        class == RankClass::Rank3,
        format!("F = ıj + k, G = ı + √2/2 (j + k): {class:?}"),
    );
    let ge = eval_cquat(&parse("I + 3/5 j + 4/5 k")?)?;
    let class = classify_rank(&eval_cquat(&f)?, &ge);
    rep.check(
        class == RankClass::Rank3,
        format!("F = ıj + k, G = ı + 3/5 j + 4/5 k: {class:?}"),
    );
    out.artifacts.push((
        "sylvester-rank3.txt".into(),
        crate::export::sylvester_text(&ff, &gf),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_passes() {
        for e in EXAMPLES {
            let out = e.run().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(out.report.passed(), "{}:\n{}", e.name, out.report);
            assert!(!out.artifacts.is_empty());
        }
    }

    #[test]
    fn unknown_example() {
        let err = find("unknown").err().unwrap();
        assert!(matches!(err, CliError::UnknownExample(..)));
        assert!(err.to_string().contains("catenoid"));
    }
}
