use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mincq::error::{CliError, CliResult};
use mincq::export::{
    curve_csv, geometry_csv, geometry_rows, mesh_to_obj, sylvester_exact_text, sylvester_text,
};
use mincq::expr::{eval_cquat, eval_fquat, eval_scale, has_sqrt, parse};
use mincq::format::{CornerFile, Document, Kind, Representation};
use mincq::registry;
use mincq::verify::{
    condition_section, corner_values, default_domain, geometry_section, rect_of, verify_document,
    Report,
};
use mincq_core::patch::{linear_preimage, CornerData, RectangleDomain};
use mincq_core::phcurve::{integrate_curve, ph_defect, sample_curve, PHSpec};
use mincq_core::scalar::{ratio_from_f64, CRational};
use mincq_core::surface::{
    integrate_surface, lambda_singularities, mesh, Convention, Domain, Part, SurfaceSpec,
};
use num_rational::BigRational;

#[derive(Parser)]
#[command(
    name = "mincq",
    version,
    about = "Isothermal minimal surfaces via complex quaternions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convert a curve between the phi, fg, pair and pqw representations.
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a curve to a closed-form surface and sample it.
    Surface {
        /// Any curve document; pairs are the usual input.
        #[arg(long)]
        pair: PathBuf,
        /// u0,u1,v0,v1
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
        /// NxM
        #[arg(long, default_value = "21x21")]
        grid: String,
        #[arg(long, default_value = "re")]
        part: String,
        #[arg(long, default_value = "standard")]
        convention: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Linear patch from corner data over a rectangle.
    Patch {
        /// P0,r1,r2,theta with theta in radians
        #[arg(long, allow_hyphen_values = true)]
        rect: Option<String>,
        #[arg(long)]
        corners: PathBuf,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Spatial PH curve from a real preimage.
    Phcurve {
        #[arg(long)]
        preimage: PathBuf,
        /// Laurent polynomial in t; defaults to the file's scale.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// t0,t1
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matrix, determinant, eigenvalues and rank class of z ↦ Fz + zG.
    Sylvester {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Check a curve or corner file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
    /// Run a worked example and write its artifacts.
    Example {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn read_doc(path: &Path) -> CliResult<Document> {
    Document::from_json_str(&read(path)?).map_err(|e| match e {
        CliError::Parse { location, message } => CliError::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        e => e,
    })
}

fn read_curve(path: &Path) -> CliResult<(Representation, Option<[f64; 4]>)> {
    match read_doc(path)? {
        Document::Curve { repr, domain } => Ok((repr, domain)),
        Document::Corners(_) => Err(CliError::Usage(format!(
            "{}: expected a curve, found corner data",
            path.display()
        ))),
    }
}

fn floats<const N: usize>(s: &str, what: &str) -> CliResult<[f64; N]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::parse(
                what,
                format!("expected {N} comma-separated numbers, got `{s}`"),
            )
        })?;
    v.try_into().map_err(|_| {
        CliError::parse(
            what,
            format!("expected {N} comma-separated numbers, got `{s}`"),
        )
    })
}

fn parse_grid(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::parse("--grid", format!("expected NxM, got `{s}`"));
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Rational `t` close to `x`, by continued fractions with bounded denominator.
fn simple_ratio(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (
            a.checked_mul(h1)?.checked_add(h0)?,
            a.checked_mul(k1)?.checked_add(k0)?,
        );
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= 1e-14 * x.abs().max(1.0) {
            return Some(BigRational::new(h1.into(), k1.into()));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    ratio_from_f64(x)
}

/// Exact unit `((1−t²) + 2tı)/(1+t²)` with `t ≈ tan(θ/2)`.
fn rotation_of(theta: f64) -> CliResult<CRational> {
    let t = simple_ratio((theta / 2.0).tan())
        .ok_or_else(|| CliError::parse("--rect", "invalid angle"))?;
    let one = BigRational::from_integer(1.into());
    let d = &one + &t * &t;
    Ok(CRational::new((&one - &t * &t) / &d, (&t + &t) / &d))
}

fn parse_rect(s: &str) -> CliResult<RectangleDomain> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::parse(
            "--rect",
            format!("expected P0,r1,r2,theta, got `{s}`"),
        ));
    }
    let p0 = eval_cquat(&parse(parts[0])?)?;
    if !p0.vector_part().is_zero() {
        return Err(CliError::parse("--rect", "P0 must be a complex number"));
    }
    let real = |k: usize| -> CliResult<BigRational> {
        let c = eval_cquat(&parse(parts[k])?)?;
        if !c.vector_part().is_zero() || !c.c[0].is_real() {
            return Err(CliError::parse(
                "--rect",
                format!("`{}` is not a real number", parts[k]),
            ));
        }
        Ok(c.c[0].re.clone())
    };
    let theta: f64 = parts[3]
        .trim()
        .parse()
        .map_err(|_| CliError::parse("--rect", format!("invalid angle `{}`", parts[3])))?;
    Ok(RectangleDomain::from_legs(
        p0.c[0].clone(),
        real(1)?,
        real(2)?,
        rotation_of(theta)?,
    )?)
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.cmd {
        Cmd::Convert {
            from,
            to,
            input,
            out,
        } => {
            let (from, to) = (Kind::parse(&from)?, Kind::parse(&to)?);
            let (repr, domain) = read_curve(&input)?;
            if repr.kind() != from {
                return Err(CliError::Usage(format!(
                    "{}: file holds a {:?} document, not {:?}",
                    input.display(),
                    repr.kind(),
                    from
                )));
            }
            let doc = Document::Curve {
                repr: repr.convert(to)?,
                domain,
            };
            emit(out.as_deref(), &doc.to_json_string())?;
            Ok(true)
        }
        Cmd::Surface {
            pair,
            domain,
            grid,
            part,
            convention,
            out,
            report,
        } => {
            let (repr, file_domain) = read_curve(&pair)?;
            let curve = repr.curve()?;
            let domain = match domain
                .map(|d| floats::<4>(&d, "--domain"))
                .transpose()?
                .or(file_domain)
            {
                Some([u0, u1, v0, v1]) => Domain::new(u0, u1, v0, v1)?,
                None => default_domain(curve.phi()),
            };
            let part = match part.as_str() {
                "re" => Part::Real,
                "im" => Part::Imaginary,
                _ => {
                    return Err(CliError::Usage(format!(
                        "--part must be re or im, got `{part}`"
                    )))
                }
            };
            let convention = match convention.as_str() {
                "standard" => Convention::Standard,
                "doubled" => Convention::Doubled,
                _ => {
                    return Err(CliError::Usage(format!(
                        "--convention must be standard or doubled, got `{convention}`"
                    )))
                }
            };
            let (nu, nv) = parse_grid(&grid)?;
            let singular = match &repr {
                Representation::Pair(p) => lambda_singularities(&p.lambda, Some(&domain))?,
                _ => Vec::new(),
            };
            let spec = SurfaceSpec::new(curve, domain)
                .with_part(part)
                .with_convention(convention);
            let x = integrate_surface(&spec)?;
            for (name, c) in ["x", "y", "z"].iter().zip(x.components()) {
                println!("{name}(u,v) = {c}");
            }
            let roots: Vec<_> = singular.iter().map(|s| s.root).collect();
            let m = mesh(&x, nu, nv, &roots)?;
            if !m.degenerate.is_empty() {
                println!("degenerate vertices: {}", m.degenerate.len());
            }
            if let Some(p) = out {
                write(&p, &mesh_to_obj(&m))?;
            }
            if let Some(p) = report {
                write(&p, &geometry_csv(&geometry_rows(&x, &m)?))?;
            }
            let rep = geometry_section(&x, nu.max(nv))?;
            print!("{rep}");
            Ok(rep.passed())
        }
        Cmd::Patch {
            rect,
            corners,
            grid,
            out,
            report,
        } => {
            let file = match read_doc(&corners)? {
                Document::Corners(c) => *c,
                Document::Curve { .. } => {
                    return Err(CliError::Usage(format!(
                        "{}: expected corner data",
                        corners.display()
                    )))
                }
            };
            let rect = match rect {
                Some(s) => parse_rect(&s)?,
                None => rect_of(&file)?,
            };
            run_patch(&rect, &file, grid, out.as_deref(), report.as_deref())
        }
        Cmd::Phcurve {
            preimage,
            lambda,
            samples,
            range,
            out,
        } => {
            let (repr, _) = read_curve(&preimage)?;
            let pair = repr.pair()?;
            let lambda = match lambda {
                Some(s) => eval_scale(&parse(&s)?)?,
                None => pair.lambda.clone(),
            };
            let lambda = lambda.as_laurent().cloned().ok_or_else(|| {
                CliError::Usage(format!("lambda = {lambda} is not a Laurent polynomial"))
            })?;
            let spec = PHSpec::new(pair.a, lambda)?;
            let defect = ph_defect(&spec);
            let curve = integrate_curve(&spec)?;
            println!("gamma(t) = {}", curve.gamma);
            let [t0, t1] = floats::<2>(&range, "--range")?;
            emit(
                out.as_deref(),
                &curve_csv(&sample_curve(&spec, t0, t1, samples)?),
            )?;
            let mut rep = Report::default();
            rep.check(defect.is_zero(), format!("PH defect {defect}"));
            print!("{rep}");
            Ok(rep.passed())
        }
        Cmd::Sylvester { f, g } => {
            let (f, g) = (parse(&f)?, parse(&g)?);
            if has_sqrt(&f) || has_sqrt(&g) {
                print!("{}", sylvester_text(&eval_fquat(&f)?, &eval_fquat(&g)?));
            } else {
                print!(
                    "{}",
                    sylvester_exact_text(&eval_cquat(&f)?, &eval_cquat(&g)?)
                );
            }
            Ok(true)
        }
        Cmd::Verify { file, grid } => {
            let rep = verify_document(&read_doc(&file)?, grid)?;
            print!("{rep}");
            Ok(rep.passed())
        }
        Cmd::Example { name, out, list } => {
            if list || name.is_none() {
                for e in registry::EXAMPLES {
                    println!("{:<16} {}", e.name, e.summary);
                }
                return Ok(true);
            }
            let e = registry::find(name.as_deref().unwrap_or_default())?;
            let outcome = e.run()?;
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)
                    .map_err(|err| CliError::io(dir.display().to_string(), err))?;
                for (file, contents) in &outcome.artifacts {
                    write(&dir.join(file), contents)?;
                }
            }
            print!("{}", outcome.report);
            Ok(outcome.report.passed())
        }
    }
}

fn run_patch(
    rect: &RectangleDomain,
    file: &CornerFile,
    grid: usize,
    out: Option<&Path>,
    report: Option<&Path>,
) -> CliResult<bool> {
    let values = corner_values(file, rect)?;
    let mut rep = condition_section(rect, &values);
    if rep.passed() {
        let data = CornerData { phi: values };
        let lp = linear_preimage(rect, &data)?;
        rep.info(format!("A = {}", lp.pair.a));
        rep.info(format!("lambda = {}", lp.pair.lambda));
        if let Some(m) = &lp.mobius {
            let (s, t) = m.linear_parts();
            rep.info(format!("s(z) = {s}"));
            rep.info(format!("t(z) = {t}"));
        }
        let (_, _, x) = mincq_core::patch::patch(rect, &data)?;
        for (name, c) in ["x", "y", "z"].iter().zip(x.components()) {
            rep.info(format!("{name}(u,v) = {c}"));
        }
        if let Some(p) = out {
            write(p, &mesh_to_obj(&mesh(&x, grid, grid, &[])?))?;
        }
    }
    let text = rep.to_string();
    if let Some(p) = report {
        write(p, &text)?;
    }
    print!("{text}");
    Ok(rep.passed())
}

fn main() -> ExitCode {
    // clap exits with 2 on bad usage, which is reserved for defects here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_become_exact_rotations() {
        assert_eq!(rotation_of(0.0).unwrap(), CRational::from(1));
        assert_eq!(
            rotation_of(std::f64::consts::FRAC_PI_2).unwrap(),
            CRational::i()
        );
        // 3-4-5 triangle: tan(θ/2) = 1/2
        let r = rotation_of(4f64.atan2(3.0)).unwrap();
        assert_eq!(r, CRational::from_fracs(3, 5, 4, 5));
        assert_eq!(r.norm_sqr(), BigRational::from_integer(1.into()));
        // any angle still gives a unit
        assert_eq!(
            rotation_of(0.3).unwrap().norm_sqr(),
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn rect_argument() {
        let r = parse_rect("1+I, 1, 2, 1.5707963267948966").unwrap();
        let c = CRational::from_ints;
        assert_eq!(r.p, [c(1, 1), c(1, 2), c(-1, 2), c(-1, 1)]);
        assert!(parse_rect("0,1,2").is_err());
        assert!(parse_rect("0,I,2,0").is_err());
        assert!(parse_rect("0,1,0,0").is_err());
    }
}
