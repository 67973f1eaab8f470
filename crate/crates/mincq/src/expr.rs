//! Small expression language for command-line arguments.
//!
//! `I` is the complex unit, `i`, `j`, `k` are quaternion units and `z` or `t`
//! is the variable. Numbers are exact decimals or integers; `sqrt(..)` forces
//! floating evaluation. Juxtaposition multiplies, so `2z^2` and `(1+I)j` work.

use mincq_core::poly::{CLaurent, QLaurent};
use mincq_core::weierstrass::RationalScale;
use mincq_core::{CQuat, CRational, FQuat};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{CliError, CliResult};
use crate::format::parse_rat;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    ImagUnit,
    Unit(usize),
    Var,
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> CliError {
        let col = self
            .chars
            .get(self.pos)
            .map_or(self.src.chars().count(), |_| self.pos)
            + 1;
        CliError::parse(format!("`{}` column {col}", self.src), msg)
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self
                .peek()
                .is_some_and(|c| c == '(' || c.is_alphanumeric() || c == '.' || c == 'ı')
            {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> CliResult<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> CliResult<Expr> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1.is_ascii_digit())
        {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        let e: i32 = digits
            .parse()
            .map_err(|_| self.err("expected an integer exponent"))?;
        if paren && !self.eat(')') {
            return Err(self.err("expected `)`"));
        }
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn primary(&mut self) -> CliResult<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.1.is_ascii_digit() || c.1 == '.')
                {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                Ok(Expr::Num(parse_rat(
                    &s,
                    &format!("`{}` column {}", self.src, start + 1),
                )?))
            }
            Some('ı') => {
                self.pos += 1;
                Ok(Expr::ImagUnit)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.1.is_ascii_alphabetic())
                {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                match word.as_str() {
                    "I" => Ok(Expr::ImagUnit),
                    "i" => Ok(Expr::Unit(1)),
                    "j" => Ok(Expr::Unit(2)),
                    "k" => Ok(Expr::Unit(3)),
                    "z" | "t" => Ok(Expr::Var),
                    "sqrt" => {
                        if !self.eat('(') {
                            return Err(self.err("expected `(` after sqrt"));
                        }
                        let e = self.expr()?;
                        if !self.eat(')') {
                            return Err(self.err("expected `)`"));
                        }
                        Ok(Expr::Sqrt(Box::new(e)))
                    }
                    _ => {
                        self.pos = start;
                        Err(self.err(format!("unknown symbol `{word}`")))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> CliResult<Expr> {
    let mut p = Parser {
        src,
        chars: src.char_indices().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Exact value: quaternion Laurent numerator over a scalar polynomial.
#[derive(Clone, Debug)]
struct Frac {
    num: QLaurent,
    den: CLaurent,
}

fn scalar_part(q: &QLaurent) -> Option<CLaurent> {
    (1..4)
        .all(|l| q.component(l).is_zero())
        .then(|| q.component(0))
}

fn eval_frac(e: &Expr) -> CliResult<Frac> {
    let scalar = |c: CQuat| Frac {
        num: QLaurent::constant(c),
        den: CLaurent::one(),
    };
    Ok(match e {
        Expr::Num(r) => scalar(CQuat::scalar(CRational::real(r.clone()))),
        Expr::ImagUnit => scalar(CQuat::scalar(CRational::i())),
        Expr::Unit(l) => {
            let mut c = [
                CRational::from(0),
                CRational::from(0),
                CRational::from(0),
                CRational::from(0),
            ];
            c[*l] = CRational::from(1);
            scalar(CQuat { c })
        }
        Expr::Var => Frac {
            num: QLaurent::monomial(CQuat::one(), 1),
            den: CLaurent::one(),
        },
        Expr::Sqrt(_) => {
            return Err(CliError::Usage(
                "sqrt is only available for floating constants".into(),
            ))
        }
        Expr::Neg(a) => {
            let a = eval_frac(a)?;
            Frac {
                num: -a.num,
                den: a.den,
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, b) = (eval_frac(a)?, eval_frac(b)?);
            let (x, y) = (a.num.mul_scalar(&b.den), b.num.mul_scalar(&a.den));
            let num = if matches!(e, Expr::Add(..)) {
                &x + &y
            } else {
                &x - &y
            };
            Frac {
                num,
                den: &a.den * &b.den,
            }
        }
        Expr::Mul(a, b) => {
            let (a, b) = (eval_frac(a)?, eval_frac(b)?);
            Frac {
                num: &a.num * &b.num,
                den: &a.den * &b.den,
            }
        }
        Expr::Div(a, b) => {
            let (a, b) = (eval_frac(a)?, eval_frac(b)?);
            divide(a, b)?
        }
        Expr::Pow(a, n) => {
            let a = eval_frac(a)?;
            let mut acc = Frac {
                num: QLaurent::one(),
                den: CLaurent::one(),
            };
            for _ in 0..n.unsigned_abs() {
                acc = Frac {
                    num: &acc.num * &a.num,
                    den: &acc.den * &a.den,
                };
            }
            if *n < 0 {
                acc = divide(
                    Frac {
                        num: QLaurent::one(),
                        den: CLaurent::one(),
                    },
                    acc,
                )?;
            }
            acc
        }
    })
}

fn divide(a: Frac, b: Frac) -> CliResult<Frac> {
    if let Some(s) = scalar_part(&b.num) {
        if s.is_zero() {
            return Err(CliError::Core(mincq_core::Error::DivisionByZero));
        }
        // monomial divisors stay in the Laurent numerator
        if s.num_terms() == 1 {
            let (e, c) = s
                .terms()
                .next()
                .map(|(e, c)| (e, c.clone()))
                .expect("one term");
            let inv = c.inv()?;
            return Ok(Frac {
                num: a.num.mul_scalar(&b.den).shift(-e).scale(&inv),
                den: a.den,
            });
        }
        return Ok(Frac {
            num: a.num.mul_scalar(&b.den),
            den: &a.den * &s,
        });
    }
    if b.num.degree() == Some(0) && b.num.valuation() == Some(0) && b.den.degree() == Some(0) {
        let inv = b.num.coeff(0).inverse()?;
        let d = b.den.coeff(0);
        return Ok(Frac {
            num: a.num.right_mul(&inv).scale(&d),
            den: a.den,
        });
    }
    Err(CliError::Usage(
        "division by a non-constant quaternion".into(),
    ))
}

/// Scalar rational function, e.g. a scale `λ`.
pub fn eval_scale(e: &Expr) -> CliResult<RationalScale> {
    let f = eval_frac(e)?;
    let num = scalar_part(&f.num)
        .ok_or_else(|| CliError::Usage("expected a scalar expression".into()))?;
    Ok(RationalScale::new(num, f.den)?)
}

/// Quaternion Laurent polynomial; the denominator must divide exactly.
pub fn eval_qlaurent(e: &Expr) -> CliResult<QLaurent> {
    let f = eval_frac(e)?;
    f.num
        .div_exact(&f.den)
        .ok_or_else(|| CliError::Usage("expression is not a Laurent polynomial".into()))
}

/// Exact quaternion constant.
pub fn eval_cquat(e: &Expr) -> CliResult<CQuat> {
    let q = eval_qlaurent(e)?;
    if q.terms().any(|(e, _)| e != 0) {
        return Err(CliError::Usage("expected a constant".into()));
    }
    Ok(q.coeff(0))
}

/// Floating quaternion constant; accepts `sqrt`.
pub fn eval_fquat(e: &Expr) -> CliResult<FQuat> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let zero = FQuat::zero();
    Ok(match e {
        Expr::Num(r) => FQuat::scalar(c(mincq_core::scalar::ratio_to_f64(r), 0.0)),
        Expr::ImagUnit => FQuat::scalar(c(0.0, 1.0)),
        Expr::Unit(l) => {
            let mut q = zero;
            q.c[*l] = c(1.0, 0.0);
            q
        }
        Expr::Var => return Err(CliError::Usage("expected a constant".into())),
        Expr::Sqrt(a) => {
            let a = eval_fquat(a)?;
            if (1..4).any(|l| a.c[l] != c(0.0, 0.0)) {
                return Err(CliError::Usage("sqrt of a quaternion".into()));
            }
            FQuat::scalar(a.c[0].sqrt())
        }
        Expr::Neg(a) => -eval_fquat(a)?,
        Expr::Add(a, b) => eval_fquat(a)? + eval_fquat(b)?,
        Expr::Sub(a, b) => eval_fquat(a)? - eval_fquat(b)?,
        Expr::Mul(a, b) => eval_fquat(a)? * eval_fquat(b)?,
        Expr::Div(a, b) => eval_fquat(a)? * eval_fquat(b)?.inverse()?,
        Expr::Pow(a, n) => {
            let a = eval_fquat(a)?;
            let mut acc = FQuat::one();
            for _ in 0..n.unsigned_abs() {
                acc = acc * a.clone();
            }
            if *n < 0 {
                acc = acc.inverse()?;
            }
            acc
        }
    })
}

pub fn has_sqrt(e: &Expr) -> bool {
    match e {
        Expr::Sqrt(_) => true,
        Expr::Neg(a) | Expr::Pow(a, _) => has_sqrt(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            has_sqrt(a) || has_sqrt(b)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_expressions() {
        let l = eval_scale(&parse("(t^4+1)/t^2").unwrap()).unwrap();
        assert_eq!(
            l.as_laurent(),
            Some(&CLaurent::from_ints(&[(2, 1, 0), (-2, 1, 0)]))
        );
        let l = eval_scale(&parse("1/(8*z^4)").unwrap()).unwrap();
        assert_eq!(
            l.as_laurent(),
            Some(&CLaurent::from_terms([(
                -4,
                CRational::from_fracs(1, 8, 0, 1)
            )]))
        );
        let l = eval_scale(&parse("t^-1").unwrap()).unwrap();
        assert_eq!(l.as_laurent(), Some(&CLaurent::from_ints(&[(-1, 1, 0)])));
        let l = eval_scale(&parse("1/(z-1)").unwrap()).unwrap();
        assert_eq!(l.den, CLaurent::from_ints(&[(1, 1, 0), (0, -1, 0)]));
    }

    #[test]
    fn quaternion_expressions() {
        assert_eq!(
            eval_cquat(&parse("I*j + k").unwrap()).unwrap(),
            CQuat::from_ints([(0, 0), (0, 0), (0, 1), (1, 0)])
        );
        assert_eq!(eval_cquat(&parse("i*j").unwrap()).unwrap(), CQuat::unit_k());
        assert_eq!(
            eval_cquat(&parse("1/i").unwrap()).unwrap(),
            -CQuat::unit_i()
        );
        let a = eval_qlaurent(&parse("-(5+20j)z + 25").unwrap()).unwrap();
        assert_eq!(
            a.coeff(1),
            CQuat::from_ints([(-5, 0), (0, 0), (-20, 0), (0, 0)])
        );
        assert_eq!(
            a.coeff(0),
            CQuat::from_ints([(25, 0), (0, 0), (0, 0), (0, 0)])
        );
        let f = eval_fquat(&parse("I + sqrt(2)/2*(j+k)").unwrap()).unwrap();
        assert!((f.c[2].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(has_sqrt(&parse("sqrt(2)").unwrap()) && !has_sqrt(&parse("2").unwrap()));
    }

    #[test]
    fn parse_errors_have_columns() {
        let e = parse("1 + q").unwrap_err().to_string();
        assert!(e.contains("column 5"), "{e}");
        assert!(parse("(1+2").is_err());
        assert!(parse("z^x").is_err());
    }
}
