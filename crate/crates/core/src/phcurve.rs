//! Spatial Pythagorean-hodograph curves `γ′ = λ·A·i·Aᶜ` from a real
//! quaternion polynomial `A(t)` and a real scalar Laurent polynomial `λ(t)`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{CLaurent, QLaurent};
use crate::quat::CQuat;
use crate::scalar::CRational;

#[derive(Clone, Debug, PartialEq)]
pub struct PHSpec {
    pub a: QLaurent,
    pub lambda: CLaurent,
}

impl PHSpec {
    pub fn new(a: QLaurent, lambda: CLaurent) -> Result<Self> {
        if !a.is_real() || !lambda.is_real() {
            return Err(Error::NonRealPreimage);
        }
        Ok(PHSpec { a, lambda })
    }
}

/// `λ·A·i·Aᶜ`, a pure-vector Laurent polynomial.
pub fn hodograph(spec: &PHSpec) -> QLaurent {
    let ai = &spec.a * &QLaurent::constant(CQuat::unit_i());
    (&ai * &spec.a.conj_quat()).mul_scalar(&spec.lambda)
}

/// `σ = λ·Aˢ`.
pub fn speed(spec: &PHSpec) -> CLaurent {
    &spec.lambda * &spec.a.qsnorm()
}

/// `x′² + y′² + z′² − σ²`, identically zero for every valid spec.
pub fn ph_defect(spec: &PHSpec) -> CLaurent {
    let s = speed(spec);
    &hodograph(spec).vector_snorm() - &(&s * &s)
}

/// Closed-form curve `γ(t)`, taken without a constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct PHCurve {
    pub gamma: QLaurent,
}

/// Integrates the hodograph; a nonzero `t⁻¹` coefficient would produce a
/// logarithm and is reported.
pub fn integrate_curve(spec: &PHSpec) -> Result<PHCurve> {
    let h = hodograph(spec);
    let residue = h.residue_at_zero();
    if !residue.is_zero() {
        return Err(Error::NonzeroResidue {
            pole: Box::new(CRational::from(0)),
            residue: Box::new(residue),
        });
    }
    Ok(PHCurve {
        gamma: h.antiderivative().principal,
    })
}

/// One sample of a PH curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub point: [f64; 3],
    pub tangent: [f64; 3],
    pub speed: f64,
}

/// `n ≥ 2` equally spaced samples on `[t0, t1]`.
pub fn sample_curve(spec: &PHSpec, t0: f64, t1: f64, n: usize) -> Result<Vec<CurveSample>> {
    if n < 2 {
        return Err(Error::InvalidGrid);
    }
    let curve = integrate_curve(spec)?;
    let h = hodograph(spec);
    let s = speed(spec);
    let polynomial = curve.gamma.is_polynomial() && h.is_polynomial();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t = t0 + (t1 - t0) * k as f64 / (n - 1) as f64;
        if t == 0.0 && !polynomial {
            return Err(Error::PoleEvaluation);
        }
        let z = num_complex::Complex64::new(t, 0.0);
        out.push(CurveSample {
            t,
            point: curve.gamma.eval_f64(z).re_vector(),
            tangent: h.eval_f64(z).re_vector(),
            speed: s.eval_f64(z).re,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_line() {
        let spec = PHSpec::new(QLaurent::one(), CLaurent::one()).unwrap();
        assert_eq!(hodograph(&spec), QLaurent::constant(CQuat::unit_i()));
        assert_eq!(speed(&spec), CLaurent::one());
    }

    #[test]
    fn speed_of_t_plus_j() {
        let a = QLaurent::from_terms([(1, CQuat::one()), (0, CQuat::unit_j())]);
        let spec = PHSpec::new(a, CLaurent::one()).unwrap();
        assert_eq!(speed(&spec), CLaurent::from_ints(&[(2, 1, 0), (0, 1, 0)]));
        assert!(ph_defect(&spec).is_zero());
    }

    #[test]
    fn residue_is_reported() {
        let spec = PHSpec::new(QLaurent::one(), CLaurent::from_ints(&[(-1, 1, 0)])).unwrap();
        match integrate_curve(&spec) {
            Err(Error::NonzeroResidue { residue, .. }) => assert_eq!(*residue, CQuat::unit_i()),
            other => panic!("expected a residue error, got {other:?}"),
        }
    }

    #[test]
    fn rational_curve_without_residue() {
        // λ = (t⁴+1)/t², A = t + i: λ·A·i·Aᶜ = (t⁴ + t² + 1 + t⁻²)·i
        let a = QLaurent::from_terms([(1, CQuat::one()), (0, CQuat::unit_i())]);
        let lambda = CLaurent::from_ints(&[(2, 1, 0), (-2, 1, 0)]);
        let spec = PHSpec::new(a, lambda).unwrap();
        let h = hodograph(&spec);
        assert!(h.residue_at_zero().is_zero());
        let c = integrate_curve(&spec).unwrap();
        assert!(!c.gamma.is_polynomial());
        assert_eq!(c.gamma.derivative(), h);
    }

    #[test]
    fn complex_preimage_rejected() {
        let a = QLaurent::constant(CQuat::null_l());
        assert_eq!(PHSpec::new(a, CLaurent::one()), Err(Error::NonRealPreimage));
    }
}
