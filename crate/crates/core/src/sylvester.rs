//! The Sylvester operator `S_{F,G}(z) = Fz + zG` on ℍ_ℂ and the conjugacy
//! solver for `f·χ = χ·g` over Laurent polynomials.
//!
//! Writing `s = F₀ + G₀`, `a = F_vˢ` and `b = G_vˢ`, the operator matrix has
//! determinant `s⁴ + 2s²(a+b) + (a−b)²` and eigenvalues `s ± ı(√a ± √b)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{determinant4, Mat4};
use crate::poly::QLaurent;
use crate::quat::{CQuat, FQuat, Quaternion};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankClass {
    Full,
    Rank3,
    Rank2,
    /// `F_v = 0` or `G_v = 0`: the operator is multiplication by a single
    /// quaternion.
    ScalarDegenerate,
}

/// Matrix of `z ↦ Fz + zG` in the basis `(1, i, j, k)`.
pub fn operator_matrix<S: Scalar>(f: &Quaternion<S>, g: &Quaternion<S>) -> Mat4<S> {
    let s = f.c[0].clone() + g.c[0].clone();
    let p = |l: usize| f.c[l].clone() + g.c[l].clone();
    let m = |l: usize| f.c[l].clone() - g.c[l].clone();
    [
        [s.clone(), -p(1), -p(2), -p(3)],
        [p(1), s.clone(), -m(3), m(2)],
        [p(2), m(3), s.clone(), -m(1)],
        [p(3), -m(2), m(1), s],
    ]
}

pub fn apply<S: Scalar>(f: &Quaternion<S>, g: &Quaternion<S>, z: &Quaternion<S>) -> Quaternion<S> {
    f.clone() * z.clone() + z.clone() * g.clone()
}

/// Determinant of [`operator_matrix`] by cofactor expansion.
pub fn determinant<S: Scalar>(f: &Quaternion<S>, g: &Quaternion<S>) -> S {
    determinant4(&operator_matrix(f, g))
}

pub fn det_closed_form<S: Scalar>(f: &Quaternion<S>, g: &Quaternion<S>) -> S {
    let s = f.c[0].clone() + g.c[0].clone();
    let a = f.vector_snorm();
    let b = g.vector_snorm();
    let s2 = s.clone() * s;
    let d = a.clone() - b.clone();
    s2.clone() * s2.clone() + S::from_i64(2) * s2 * (a + b) + d.clone() * d
}

/// The four eigenvalues `s + ı(√a+√b)`, `s + ı(√a−√b)`, `s − ı(√a−√b)`,
/// `s − ı(√a+√b)` with principal square roots.
pub fn eigenvalues(f: &FQuat, g: &FQuat) -> [Complex64; 4] {
    let s = f.c[0] + g.c[0];
    let ra = f.vector_snorm().sqrt();
    let rb = g.vector_snorm().sqrt();
    let i = Complex64::new(0.0, 1.0);
    [
        s + i * (ra + rb),
        s + i * (ra - rb),
        s - i * (ra - rb),
        s - i * (ra + rb),
    ]
}

/// Exact rank class from the closed-form criteria.
pub fn classify_rank(f: &CQuat, g: &CQuat) -> RankClass {
    if f.vector_part().is_zero() || g.vector_part().is_zero() {
        return RankClass::ScalarDegenerate;
    }
    let s = &f.c[0] + &g.c[0];
    let (a, b) = (f.vector_snorm(), g.vector_snorm());
    if Scalar::is_zero(&s) && a == b {
        RankClass::Rank2
    } else if Scalar::is_zero(&det_closed_form(f, g)) {
        RankClass::Rank3
    } else {
        RankClass::Full
    }
}

/// Floating counterpart of [`classify_rank`] for inputs with irrational
/// coefficients. Each invariant is compared against zero relative to the
/// natural scale `|s|² + |a| + |b|` of the pair.
pub fn classify_rank_f64(f: &FQuat, g: &FQuat, tol: f64) -> RankClass {
    let fv = f.vector_part();
    let gv = g.vector_part();
    let scale_f = fv.max_abs().max(f.c[0].norm());
    let scale_g = gv.max_abs().max(g.c[0].norm());
    if fv.max_abs() <= tol * scale_f.max(1.0) || gv.max_abs() <= tol * scale_g.max(1.0) {
        return RankClass::ScalarDegenerate;
    }
    let s = f.c[0] + g.c[0];
    let (a, b) = (fv.vector_snorm(), gv.vector_snorm());
    let scale = s.norm_sqr() + a.norm() + b.norm();
    if s.norm_sqr() <= tol * scale && (a - b).norm() <= tol * scale {
        RankClass::Rank2
    } else if det_closed_form(f, g).norm() <= tol * scale * scale {
        RankClass::Rank3
    } else {
        RankClass::Full
    }
}

/// `χ = f·h − h·gᶜ`. When `f₀ ≡ g₀` this is `f_v h + h g_v`, which satisfies
/// `f·χ = χ·g` because `f_v² = −f_vˢ = −g_vˢ = g_v²`.
pub fn solve_conjugator(f: &QLaurent, g: &QLaurent, h: &QLaurent) -> Result<QLaurent> {
    check_conjugacy(f, g)?;
    conjugator_unchecked(f, g, h)
}

fn check_conjugacy(f: &QLaurent, g: &QLaurent) -> Result<()> {
    if f.component(0) != g.component(0) {
        return Err(Error::ConjugacyObstruction("scalar parts differ"));
    }
    if f.vector_snorm() != g.vector_snorm() {
        return Err(Error::ConjugacyObstruction(
            "vector parts have different complex norms",
        ));
    }
    Ok(())
}

fn conjugator_unchecked(f: &QLaurent, g: &QLaurent, h: &QLaurent) -> Result<QLaurent> {
    let chi = &(f * h) - &(h * &g.conj_quat());
    if chi.qsnorm().is_zero() {
        return Err(Error::NonInvertibleChi);
    }
    Ok(chi)
}

/// The fixed candidate sequence for `h`: `zᵐ·(1, i, j, k)`, then
/// `zᵐ⁺¹·(1, i, j, k)` and so on, where `zᵐ` clears the poles of `f` and `g`.
pub fn h_ladder(f: &QLaurent, g: &QLaurent) -> impl Iterator<Item = QLaurent> {
    let low = f.valuation().unwrap_or(0).min(g.valuation().unwrap_or(0));
    let m = (-low).max(0);
    let basis = [
        CQuat::one(),
        CQuat::unit_i(),
        CQuat::unit_j(),
        CQuat::unit_k(),
    ];
    (0..).flat_map(move |d| {
        let basis = basis.clone();
        (0..4).map(move |b| QLaurent::monomial(basis[b].clone(), m + d))
    })
}

/// First ladder candidate whose `χ` has `χˢ ≢ 0`, together with that `χ`.
pub fn find_invertible_h(
    f: &QLaurent,
    g: &QLaurent,
    budget: usize,
) -> Result<(QLaurent, QLaurent)> {
    check_conjugacy(f, g)?;
    for h in h_ladder(f, g).take(budget) {
        match conjugator_unchecked(f, g, &h) {
            Ok(chi) => return Ok((h, chi)),
            Err(Error::NonInvertibleChi) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(budget))
}

/// Default number of ladder candidates tried by the converters.
pub const DEFAULT_H_BUDGET: usize = 64;

/// Exact residual `f·χ − χ·g`.
pub fn conjugacy_residual(f: &QLaurent, chi: &QLaurent, g: &QLaurent) -> QLaurent {
    &(f * chi) - &(chi * g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CRational;

    fn q(v: [(i64, i64); 4]) -> CQuat {
        CQuat::from_ints(v)
    }

    fn basis() -> [CQuat; 4] {
        [
            CQuat::one(),
            CQuat::unit_i(),
            CQuat::unit_j(),
            CQuat::unit_k(),
        ]
    }

    #[test]
    fn matrix_columns_are_images_of_basis() {
        let f = q([(1, 2), (0, -1), (3, 0), (2, 2)]);
        let g = q([(-4, 0), (1, 1), (0, 0), (5, -3)]);
        let m = operator_matrix(&f, &g);
        for (c, e) in basis().iter().enumerate() {
            let img = apply(&f, &g, e);
            for r in 0..4 {
                assert_eq!(m[r][c], img.c[r]);
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let one = CQuat::one();
        assert_eq!(det_closed_form(&one, &one), CRational::from(16));
        assert_eq!(determinant(&one, &one), CRational::from(16));
        // real F, G = −F₀ + G_v with |G_v| = |F_v|
        let f = q([(3, 0), (1, 0), (2, 0), (2, 0)]);
        let g = q([(-3, 0), (0, 0), (3, 0), (0, 0)]);
        assert!(Scalar::is_zero(&det_closed_form(&f, &g)));
        assert!(Scalar::is_zero(&determinant(&f, &g)));
    }

    #[test]
    fn rank_classes() {
        let i = CQuat::unit_i();
        assert_eq!(classify_rank(&i, &-i.clone()), RankClass::Rank2);
        assert_eq!(
            classify_rank(&CQuat::one(), &CQuat::one()),
            RankClass::ScalarDegenerate
        );
        assert_eq!(classify_rank(&i, &CQuat::unit_j()), RankClass::Rank2);
        let f = q([(1, 0), (1, 0), (0, 0), (0, 0)]);
        assert_eq!(classify_rank(&f, &f), RankClass::Full);
        // ıj + k against ı + (3/5)j + (4/5)k: s = ı, a = 0, b = 1
        let f = q([(0, 0), (0, 0), (0, 1), (1, 0)]);
        let g = Quaternion::new(
            CRational::i(),
            CRational::from(0),
            CRational::from_fracs(3, 5, 0, 1),
            CRational::from_fracs(4, 5, 0, 1),
        );
        assert_eq!(classify_rank(&f, &g), RankClass::Rank3);
    }

    #[test]
    fn float_classifier_on_irrational_pair() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let f = FQuat::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0));
        let g = FQuat::new(c(0.0, 1.0), c(0.0, 0.0), c(h, 0.0), c(h, 0.0));
        assert_eq!(classify_rank_f64(&f, &g, 1e-12), RankClass::Rank3);
        let ev = eigenvalues(&f, &g);
        assert!(ev.iter().any(|e| e.norm() < 1e-12));
    }

    #[test]
    fn eigenvalues_of_i_and_j() {
        let ev = eigenvalues(&CQuat::unit_i().to_f64(), &CQuat::unit_j().to_f64());
        let want = [2.0, 0.0, 0.0, -2.0];
        for (e, w) in ev.iter().zip(want) {
            assert!((e - Complex64::new(0.0, w)).norm() < 1e-15);
        }
    }

    #[test]
    fn conjugator_for_equal_constants() {
        let f = QLaurent::constant(q([(2, 0), (1, 0), (0, 1), (3, 0)]));
        let (h, chi) = find_invertible_h(&f, &f, 8).unwrap();
        assert_eq!(h, QLaurent::one());
        assert!(conjugacy_residual(&f, &chi, &f).is_zero());
    }

    #[test]
    fn ladder_advances_past_null_chi() {
        let l = QLaurent::constant(CQuat::null_l());
        assert_eq!(
            solve_conjugator(&l, &l, &QLaurent::one()),
            Err(Error::NonInvertibleChi)
        );
        let (h, chi) = find_invertible_h(&l, &l, 8).unwrap();
        assert_ne!(h, QLaurent::one());
        assert!(conjugacy_residual(&l, &chi, &l).is_zero());
    }

    #[test]
    fn obstruction_and_budget() {
        let i = QLaurent::constant(CQuat::unit_i());
        let two_i = QLaurent::constant(CQuat::unit_i().scale(&CRational::from(2)));
        assert!(matches!(
            solve_conjugator(&i, &two_i, &QLaurent::one()),
            Err(Error::ConjugacyObstruction(_))
        ));
        let l = QLaurent::constant(CQuat::null_l());
        assert_eq!(find_invertible_h(&l, &l, 1), Err(Error::SearchExhausted(1)));
    }
}
