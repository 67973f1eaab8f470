mod common;

use common::c;
use mincq_core::patch::{
    cross_ratio, linear_preimage, mobius_from_corners, null_param, null_point, CornerData,
    MobiusMap, NullParam, RectangleDomain,
};
use mincq_core::poly::{CLaurent, QLaurent};
use mincq_core::roots::square_free;
use mincq_core::scalar::rat;
use mincq_core::surface::{integrate_surface, Domain, SurfaceSpec};
use mincq_core::sylvester::{
    apply, classify_rank, det_closed_form, eigenvalues, find_invertible_h, operator_matrix,
    RankClass,
};
use mincq_core::weierstrass::{sandwich_l, IsotropicCurve};
use mincq_core::{CQuat, CRational, FQuat, Scalar};
use num_complex::Complex64;
use proptest::prelude::*;

fn small_c() -> impl Strategy<Value = CRational> {
    (-6i64..=6, -6i64..=6, 1i64..=3).prop_map(|(a, b, d)| CRational::from_fracs(a, d, b, d))
}

fn quat() -> impl Strategy<Value = CQuat> {
    [small_c(), small_c(), small_c(), small_c()].prop_map(|[a, b, d, e]| CQuat::new(a, b, d, e))
}

fn cpoly(deg: usize) -> impl Strategy<Value = CLaurent> {
    proptest::collection::vec(small_c(), 1..=deg + 1)
        .prop_map(|v| CLaurent::from_terms(v.into_iter().enumerate().map(|(e, x)| (e as i32, x))))
}

fn qpoly(deg: usize) -> impl Strategy<Value = QLaurent> {
    proptest::collection::vec(quat(), 1..=deg + 1)
        .prop_map(|v| QLaurent::from_terms(v.into_iter().enumerate().map(|(e, x)| (e as i32, x))))
}

fn qlaurent() -> impl Strategy<Value = QLaurent> {
    (qpoly(2), -2i32..=0).prop_map(|(p, s)| p.shift(s))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quaternion_product_is_associative(a in quat(), b in quat(), d in quat()) {
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
    }

    #[test]
    fn snorm_is_multiplicative(a in quat(), b in quat()) {
        prop_assert_eq!((&a * &b).snorm(), &a.snorm() * &b.snorm());
    }

    #[test]
    fn conjugations_reverse_or_keep_order(a in quat(), b in quat()) {
        prop_assert_eq!((&a * &b).conj_quat(), &b.conj_quat() * &a.conj_quat());
        prop_assert_eq!((&a * &b).conj_complex(), &a.conj_complex() * &b.conj_complex());
        prop_assert_eq!(&a * &a.conj_quat(), CQuat::scalar(a.snorm()));
    }

    #[test]
    fn laurent_ring_laws(a in qlaurent(), b in qlaurent(), d in qlaurent()) {
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
        prop_assert_eq!((&a * &b).qsnorm(), &a.qsnorm() * &b.qsnorm());
    }

    #[test]
    fn antiderivative_inverts_derivative(a in qlaurent()) {
        let f = a.antiderivative();
        prop_assert_eq!(f.derivative().unwrap(), a);
    }

    #[test]
    fn bezout_identity(a in cpoly(4), b in cpoly(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (g, x, y) = CLaurent::bezout(&a, &b).unwrap();
        prop_assert_eq!(&(&x * &a) + &(&y * &b), g.clone());
        prop_assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
    }

    #[test]
    fn square_free_factorization_reconstructs(a in cpoly(2), b in cpoly(2)) {
        let p = &(&a * &a) * &b;
        prop_assume!(p.degree().unwrap_or(0) > 0);
        let mut prod = CLaurent::one();
        for (f, m) in square_free(&p).unwrap() {
            for _ in 0..m {
                prod = &prod * &f;
            }
        }
        prop_assert_eq!(prod, p.monic());
    }

    #[test]
    fn operator_matrix_represents_the_operator(f in quat(), g in quat(), z in quat()) {
        let m = operator_matrix(&f, &g);
        let lhs: Vec<CRational> = (0..4)
            .map(|r| (0..4).fold(CRational::from(0), |acc, k| &acc + &(&m[r][k] * &z.c[k])))
            .collect();
        prop_assert_eq!(lhs, apply(&f, &g, &z).c.to_vec());
    }

    #[test]
    fn eigenvalues_match_numeric_eigensolve(f in quat(), g in quat()) {
        let (ff, gf) = (f.to_f64(), g.to_f64());
        let ev = eigenvalues(&ff, &gf);
        let prod = ev.iter().fold(Complex64::new(1.0, 0.0), |a, x| a * x);
        prop_assert!(close(prod, det_closed_form(&f, &g).to_c64(), 1e-9));
        let m = operator_matrix(&ff, &gf);
        let nm = nalgebra::Matrix4::from_fn(|r, k| nalgebra::Complex::new(m[r][k].re, m[r][k].im));
        let num = nm.schur().eigenvalues().expect("triangular Schur form");
        let scale = 1.0 + ev.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for e in ev {
            let best = num.iter().map(|x| (Complex64::new(x.re, x.im) - e).norm()).fold(f64::MAX, f64::min);
            prop_assert!(best < 1e-6 * scale, "eigenvalue {e} not found in {num:?}");
        }
    }

    #[test]
    fn exact_rank_class_agrees_with_svd(f in quat(), g in quat()) {
        let m = operator_matrix(&f.to_f64(), &g.to_f64());
        let nm = nalgebra::Matrix4::from_fn(|r, k| nalgebra::Complex::new(m[r][k].re, m[r][k].im));
        let mut sv: Vec<f64> = nm.svd(false, false).singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        prop_assume!(sv[0] > 0.0);
        let numeric_rank = sv.iter().filter(|&&x| x > 1e-12 * sv[0]).count();
        let expected = match classify_rank(&f, &g) {
            RankClass::Full => 4,
            RankClass::Rank3 => 3,
            RankClass::Rank2 => 2,
            RankClass::ScalarDegenerate => numeric_rank,
        };
        prop_assert_eq!(numeric_rank, expected);
    }

    #[test]
    fn conjugators_conjugate(a in qpoly(1), b in qpoly(1)) {
        // f = ALAᶜ and g = BLBᶜ are null curves with equal parts, so χ exists
        let (f, g) = (sandwich_l(&a), sandwich_l(&b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        if let Ok((_, chi)) = find_invertible_h(&f, &g, 16) {
            prop_assert!((&(&f * &chi) - &(&chi * &g)).is_zero());
        }
    }

    #[test]
    fn null_param_round_trip(s in small_c(), t in small_c()) {
        prop_assume!(!(Scalar::is_zero(&s) && Scalar::is_zero(&t)));
        let phi = null_point(&s, &t).unwrap();
        prop_assert!(Scalar::is_zero(&phi.snorm()) && phi.is_pure_vector());
        let (p, nu) = null_param(&phi).unwrap();
        prop_assert!(p.projectively_eq(&NullParam::new(s.clone(), t.clone())));
        prop_assert_eq!(null_point(&p.s, &p.t).unwrap().scale(&nu), phi.clone());
        // N(s,t) = A·L·Aᶜ with A = s + t·i
        let a = CQuat::new(s, t, CRational::from(0), CRational::from(0));
        prop_assert_eq!(&(&a * &CQuat::null_l()) * &a.conj_quat(), phi);
    }

    #[test]
    fn mobius_round_trip_and_cross_ratio_invariance(
        m in [small_c(), small_c(), small_c(), small_c()],
        rect in (1i64..=4, 1i64..=4, -3i64..=3, -3i64..=3),
    ) {
        let map = MobiusMap { m: [[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]] };
        let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        prop_assume!(!Scalar::is_zero(&det));
        let (a, b, x, y) = rect;
        let r = RectangleDomain::from_legs(c(x, y), rat(a, 1), rat(b, 1), c(1, 0)).unwrap();
        let src: Vec<NullParam> = r.p.iter().cloned().map(NullParam::affine).collect();
        let dst: Vec<NullParam> = src.iter().map(|p| map.apply(p)).collect();
        let before = cross_ratio(&src[0], &src[1], &src[2], &src[3]).unwrap();
        prop_assert_eq!(cross_ratio(&dst[0], &dst[1], &dst[2], &dst[3]).unwrap(), before);
        let recovered = mobius_from_corners(&r, &dst.clone().try_into().unwrap()).unwrap();
        prop_assert!(recovered.projectively_eq(&map));
    }

    #[test]
    fn recentring_keeps_corner_values(a in qpoly(1), p0 in small_c(), legs in (1i64..=4, 1i64..=4), rot in (1i64..=4, 0i64..=4)) {
        let (m, n) = rot;
        let d = m * m + n * n;
        let rotation = CRational::from_fracs(m * m - n * n, d, 2 * m * n, d);
        let rect = RectangleDomain::from_legs(p0, rat(legs.0, 1), rat(legs.1, 2), rotation).unwrap();
        let phi = sandwich_l(&a);
        let vals: Vec<CQuat> = rect.p.iter().map(|p| phi.eval(p).unwrap()).collect();
        prop_assume!(vals.iter().all(|v| !v.is_zero()));
        let data = CornerData { phi: vals.clone().try_into().unwrap() };
        prop_assume!(!mincq_core::patch::check_conditions(&rect, &data).cross_ratio_degenerate);

        // build in local coordinates w, then substitute w = e^{−ıθ}(z − P₀)
        let local_p: [CRational; 4] = core::array::from_fn(|k| rect.to_local(&rect.p[k]).unwrap());
        let local = RectangleDomain::from_vertices(local_p).unwrap();
        let lp = linear_preimage(&local, &data).unwrap();
        let e = Scalar::conj(&rect.rotation().unwrap());
        let shift = -(&e * &rect.p[0]);
        let back = lp.pair.phi().unwrap().compose_affine(&e, &shift).unwrap();
        for k in 0..4 {
            prop_assert_eq!(back.eval(&rect.p[k]).unwrap(), vals[k].clone());
        }
    }

    #[test]
    fn random_polynomial_surfaces_are_minimal(a in qpoly(2)) {
        let phi = sandwich_l(&a);
        prop_assume!(!phi.is_zero());
        let x = integrate_surface(&SurfaceSpec::new(IsotropicCurve::new(phi).unwrap(), Domain::square(1.0))).unwrap();
        for (u, v) in [(0.3, -0.2), (-0.7, 0.5), (0.9, 0.9)] {
            if let Ok(g) = x.geometry_report(u, v) {
                let scale = g.e_first.abs().max(1e-300);
                prop_assert!((g.e_first - g.g_first).abs() < 1e-9 * scale);
                prop_assert!(g.f_first.abs() < 1e-9 * scale);
                prop_assert!(g.harmonic_residual < 1e-9 * (1.0 + scale));
            }
        }
    }
}

#[test]
fn float_quaternions_agree_with_exact_ones() {
    let a = CQuat::from_ints([(1, 2), (-3, 0), (0, 1), (2, -2)]);
    let b = CQuat::from_ints([(0, 1), (1, 1), (-1, 0), (3, 0)]);
    let exact: FQuat = (&a * &b).to_f64();
    let float = a.to_f64() * b.to_f64();
    assert!((0..4).all(|k| exact.c[k] == float.c[k]));
}
