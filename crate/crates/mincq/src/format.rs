//! JSON documents. Exact rationals are strings `"n"` or `"n/d"`, complex
//! numbers are `[re, im]`, quaternions are four complex numbers in the order
//! `1, i, j, k`, and Laurent polynomials are lists of `[exponent, coefficient]`.

use mincq_core::poly::{CLaurent, QLaurent};
use mincq_core::weierstrass::{
    fg_from_phi, pair_from_phi_polynomial, pair_from_phi_rational, pair_from_pqw, phi_from_fg,
    phi_from_pqw, pqw_from_pair, IsotropicCurve, PQWData, PreimagePair, RationalScale, WEData,
};
use mincq_core::{CQuat, CRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type JComplex = [String; 2];
pub type JQuat = [JComplex; 4];
pub type JCPoly = Vec<(i32, JComplex)>;
pub type JQPoly = Vec<(i32, JQuat)>;

pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `n`, `n/d` and terminating decimals such as `-1.25`.
pub fn parse_rat(s: &str, location: &str) -> CliResult<BigRational> {
    let err = || CliError::parse(location, format!("`{s}` is not a rational number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(CliError::parse(location, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let all: BigInt = format!("{int}{frac}").parse().map_err(|_| err())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(all);
    if shift >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -r } else { r })
}

pub fn complex_to_json(c: &CRational) -> JComplex {
    [rat_to_string(&c.re), rat_to_string(&c.im)]
}

pub fn complex_from_json(c: &JComplex, location: &str) -> CliResult<CRational> {
    Ok(CRational::new(
        parse_rat(&c[0], &format!("{location}.re"))?,
        parse_rat(&c[1], &format!("{location}.im"))?,
    ))
}

pub fn quat_to_json(q: &CQuat) -> JQuat {
    [0, 1, 2, 3].map(|k| complex_to_json(&q.c[k]))
}

pub fn quat_from_json(q: &JQuat, location: &str) -> CliResult<CQuat> {
    let c = |k: usize| complex_from_json(&q[k], &format!("{location}[{k}]"));
    Ok(CQuat::new(c(0)?, c(1)?, c(2)?, c(3)?))
}

pub fn cpoly_to_json(p: &CLaurent) -> JCPoly {
    p.terms().map(|(e, c)| (e, complex_to_json(c))).collect()
}

pub fn cpoly_from_json(p: &JCPoly, location: &str) -> CliResult<CLaurent> {
    let mut out = CLaurent::zero();
    for (n, (e, c)) in p.iter().enumerate() {
        out.add_term(*e, complex_from_json(c, &format!("{location}[{n}]"))?);
    }
    Ok(out)
}

pub fn qpoly_to_json(p: &QLaurent) -> JQPoly {
    p.terms().map(|(e, q)| (e, quat_to_json(q))).collect()
}

pub fn qpoly_from_json(p: &JQPoly, location: &str) -> CliResult<QLaurent> {
    let mut out = QLaurent::zero();
    for (n, (e, q)) in p.iter().enumerate() {
        out.add_term(*e, quat_from_json(q, &format!("{location}[{n}]"))?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JPhi {
    pub phi: JQPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JFg {
    pub f: JCPoly,
    pub g_num: JCPoly,
    pub g_den: JCPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JPair {
    pub a: JQPoly,
    pub lambda_num: JCPoly,
    pub lambda_den: JCPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JPqw {
    pub p: JCPoly,
    pub q: JCPoly,
    pub w: JCPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JCorners {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<[JComplex; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<[JQuat; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<[JQuat; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<[JComplex; 4]>,
}

/// On-disk form of a document, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum JDocument {
    Phi(JPhi),
    Fg(JFg),
    Pair(JPair),
    Pqw(JPqw),
    Corners(Box<JCorners>),
}

fn body<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> CliResult<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        CliError::parse(
            if path == "." { "document".into() } else { path },
            e.into_inner().to_string(),
        )
    })
}

impl JDocument {
    /// Dispatches on `"kind"` by hand so that errors inside the body keep
    /// their path.
    pub fn from_value(mut v: serde_json::Value) -> CliResult<JDocument> {
        let obj = v
            .as_object_mut()
            .ok_or_else(|| CliError::parse("document", "expected a JSON object"))?;
        let kind = match obj.remove("kind") {
            Some(serde_json::Value::String(k)) => k,
            Some(_) => return Err(CliError::parse("kind", "expected a string")),
            None => return Err(CliError::parse("kind", "missing field")),
        };
        Ok(match kind.as_str() {
            "phi" => JDocument::Phi(body(v)?),
            "fg" => JDocument::Fg(body(v)?),
            "pair" => JDocument::Pair(body(v)?),
            "pqw" => JDocument::Pqw(body(v)?),
            "corners" => JDocument::Corners(Box::new(body(v)?)),
            _ => {
                return Err(CliError::parse(
                    "kind",
                    format!("unknown kind `{kind}` (phi, fg, pair, pqw, corners)"),
                ))
            }
        })
    }
}

/// One of the four curve representations.
#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    Phi(QLaurent),
    Fg(WEData),
    Pair(PreimagePair),
    Pqw(PQWData),
}

impl Representation {
    pub fn kind(&self) -> Kind {
        match self {
            Representation::Phi(_) => Kind::Phi,
            Representation::Fg(_) => Kind::Fg,
            Representation::Pair(_) => Kind::Pair,
            Representation::Pqw(_) => Kind::Pqw,
        }
    }

    /// `Φ` without the isotropy check, so that defective input can still be
    /// reported on.
    pub fn raw_phi(&self) -> CliResult<QLaurent> {
        Ok(match self {
            Representation::Phi(p) => p.clone(),
            Representation::Fg(d) => phi_from_fg(d)?.into_phi(),
            Representation::Pair(p) => p.phi()?,
            Representation::Pqw(d) => phi_from_pqw(d)?.into_phi(),
        })
    }

    pub fn curve(&self) -> CliResult<IsotropicCurve> {
        Ok(IsotropicCurve::new(self.raw_phi()?)?)
    }

    /// Preimage pair: the stored one, the `(p, q, w)` one, or one computed
    /// from `Φ` (polynomial when `Φ` is polynomial).
    pub fn pair(&self) -> CliResult<PreimagePair> {
        match self {
            Representation::Pair(p) => Ok(p.clone()),
            Representation::Pqw(d) => Ok(pair_from_pqw(d)?),
            _ => {
                let curve = self.curve()?;
                if curve.phi().is_polynomial() {
                    Ok(pair_from_phi_polynomial(&curve)?)
                } else {
                    Ok(pair_from_phi_rational(&curve)?.normalized())
                }
            }
        }
    }

    pub fn convert(&self, to: Kind) -> CliResult<Representation> {
        if self.kind() == to {
            return Ok(self.clone());
        }
        Ok(match to {
            Kind::Phi => Representation::Phi(self.curve()?.into_phi()),
            Kind::Fg => Representation::Fg(fg_from_phi(&self.curve()?)?),
            Kind::Pair => Representation::Pair(self.pair()?),
            Kind::Pqw => Representation::Pqw(pqw_from_pair(&self.pair()?)?),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Phi,
    Fg,
    Pair,
    Pqw,
}

impl Kind {
    pub fn parse(s: &str) -> CliResult<Kind> {
        match s {
            "phi" => Ok(Kind::Phi),
            "fg" => Ok(Kind::Fg),
            "pair" => Ok(Kind::Pair),
            "pqw" => Ok(Kind::Pqw),
            _ => Err(CliError::Usage(format!(
                "unknown representation `{s}` (phi, fg, pair, pqw)"
            ))),
        }
    }
}

/// Corner data for the patch pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerFile {
    pub rect: Option<[CRational; 4]>,
    pub phi: Option<[CQuat; 4]>,
    pub directions: Option<[CQuat; 4]>,
    pub scales: Option<[CRational; 4]>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Curve {
        repr: Representation,
        domain: Option<[f64; 4]>,
    },
    Corners(Box<CornerFile>),
}

fn map4<T, U>(a: &[T; 4], f: impl Fn(usize, &T) -> CliResult<U>) -> CliResult<[U; 4]> {
    let v: Vec<U> = a
        .iter()
        .enumerate()
        .map(|(k, x)| f(k, x))
        .collect::<CliResult<_>>()?;
    Ok(v.try_into().unwrap_or_else(|_| unreachable!()))
}

impl Document {
    pub fn from_json_str(s: &str) -> CliResult<Document> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| {
            CliError::parse(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        Document::from_json(&JDocument::from_value(v)?)
    }

    pub fn from_json(j: &JDocument) -> CliResult<Document> {
        Ok(match j {
            JDocument::Phi(JPhi { phi, domain }) => Document::Curve {
                repr: Representation::Phi(qpoly_from_json(phi, "phi")?),
                domain: *domain,
            },
            JDocument::Fg(JFg {
                f,
                g_num,
                g_den,
                domain,
            }) => Document::Curve {
                repr: Representation::Fg(WEData {
                    f: cpoly_from_json(f, "f")?,
                    g_num: cpoly_from_json(g_num, "g_num")?,
                    g_den: cpoly_from_json(g_den, "g_den")?,
                }),
                domain: *domain,
            },
            JDocument::Pair(JPair {
                a,
                lambda_num,
                lambda_den,
                domain,
            }) => {
                let num = cpoly_from_json(lambda_num, "lambda_num")?;
                let den = cpoly_from_json(lambda_den, "lambda_den")?;
                if den.is_zero() {
                    return Err(CliError::parse("lambda_den", "zero denominator"));
                }
                Document::Curve {
                    repr: Representation::Pair(PreimagePair::new(
                        qpoly_from_json(a, "a")?,
                        RationalScale::new(num, den)?,
                    )),
                    domain: *domain,
                }
            }
            JDocument::Pqw(JPqw { p, q, w, domain }) => Document::Curve {
                repr: Representation::Pqw(PQWData {
                    p: cpoly_from_json(p, "p")?,
                    q: cpoly_from_json(q, "q")?,
                    w: cpoly_from_json(w, "w")?,
                }),
                domain: *domain,
            },
            JDocument::Corners(c) => {
                let JCorners {
                    rect,
                    phi,
                    directions,
                    scales,
                } = c.as_ref();
                Document::Corners(Box::new(CornerFile {
                    rect: rect
                        .as_ref()
                        .map(|r| map4(r, |k, c| complex_from_json(c, &format!("rect[{k}]"))))
                        .transpose()?,
                    phi: phi
                        .as_ref()
                        .map(|r| map4(r, |k, q| quat_from_json(q, &format!("phi[{k}]"))))
                        .transpose()?,
                    directions: directions
                        .as_ref()
                        .map(|r| map4(r, |k, q| quat_from_json(q, &format!("directions[{k}]"))))
                        .transpose()?,
                    scales: scales
                        .as_ref()
                        .map(|r| map4(r, |k, c| complex_from_json(c, &format!("scales[{k}]"))))
                        .transpose()?,
                }))
            }
        })
    }

    pub fn to_json(&self) -> JDocument {
        match self {
            Document::Curve { repr, domain } => {
                let domain = *domain;
                match repr {
                    Representation::Phi(p) => JDocument::Phi(JPhi {
                        phi: qpoly_to_json(p),
                        domain,
                    }),
                    Representation::Fg(d) => JDocument::Fg(JFg {
                        f: cpoly_to_json(&d.f),
                        g_num: cpoly_to_json(&d.g_num),
                        g_den: cpoly_to_json(&d.g_den),
                        domain,
                    }),
                    Representation::Pair(p) => JDocument::Pair(JPair {
                        a: qpoly_to_json(&p.a),
                        lambda_num: cpoly_to_json(&p.lambda.num),
                        lambda_den: cpoly_to_json(&p.lambda.den),
                        domain,
                    }),
                    Representation::Pqw(d) => JDocument::Pqw(JPqw {
                        p: cpoly_to_json(&d.p),
                        q: cpoly_to_json(&d.q),
                        w: cpoly_to_json(&d.w),
                        domain,
                    }),
                }
            }
            Document::Corners(c) => JDocument::Corners(Box::new(JCorners {
                rect: c.rect.as_ref().map(|r| r.each_ref().map(complex_to_json)),
                phi: c.phi.as_ref().map(|r| r.each_ref().map(quat_to_json)),
                directions: c
                    .directions
                    .as_ref()
                    .map(|r| r.each_ref().map(quat_to_json)),
                scales: c.scales.as_ref().map(|r| r.each_ref().map(complex_to_json)),
            })),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("documents serialize");
        s.push('\n');
        s
    }
}
