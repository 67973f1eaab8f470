//! Roots of complex polynomials: exact square-free decomposition followed
//! by simultaneous (Weierstrass) iteration on each square-free factor.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::CLaurent;

/// Yun's algorithm. Returns `(factor, multiplicity)` with monic, pairwise
/// coprime, square-free factors whose product (with multiplicities) is the
/// monic associate of `p`. Powers of `z` are reported as the factor `z`.
pub fn square_free(p: &CLaurent) -> Result<Vec<(CLaurent, u32)>> {
    let v = p.valuation().ok_or(Error::BothZero)?;
    if v < 0 {
        return Err(Error::NotPolynomial);
    }
    let mut out = Vec::new();
    if v > 0 {
        out.push((CLaurent::z(), v as u32));
    }
    let f = p.shift(-v).monic();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = CLaurent::gcd(&f, &df)?;
    let mut b = f.div_exact(&a0).ok_or(Error::InexactDivision)?;
    let c = df.div_exact(&a0).ok_or(Error::InexactDivision)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() != Some(0) {
        let a = CLaurent::gcd(&b, &d)?;
        let nb = b.div_exact(&a).ok_or(Error::InexactDivision)?;
        let nc = d.div_exact(&a).ok_or(Error::InexactDivision)?;
        d = &nc - &nb.derivative();
        b = nb;
        if a.degree() != Some(0) {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Numeric roots of a polynomial with (assumed) simple roots.
pub fn simple_roots(p: &CLaurent) -> Vec<Complex64> {
    let Some(n) = p.degree().filter(|&d| d > 0) else {
        return Vec::new();
    };
    let n = n as usize;
    let lead = p.leading_coeff().expect("nonzero").to_c64();
    let coeffs: Vec<Complex64> = (0..=n).map(|e| p.coeff(e as i32).to_c64() / lead).collect();
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    if n == 1 {
        return vec![-coeffs[0]];
    }
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powi(k as i32) * radius).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for k in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for m in 0..n {
                if m != k {
                    den *= z[k] - z[m];
                }
            }
            let step = eval(z[k]) / den;
            z[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let dcoeffs: Vec<Complex64> = (1..=n).map(|e| coeffs[e] * e as f64).collect();
    let deval = |z: Complex64| {
        dcoeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = deval(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    z
}

/// All roots of `p` with multiplicities.
pub fn roots_with_multiplicity(p: &CLaurent) -> Result<Vec<(Complex64, u32)>> {
    let mut out = Vec::new();
    for (f, m) in square_free(p)? {
        out.extend(simple_roots(&f).into_iter().map(|r| (r, m)));
    }
    Ok(out)
}
