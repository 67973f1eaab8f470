#![allow(dead_code)]

use mincq_core::poly::{CLaurent, QLaurent};
use mincq_core::scalar::rat;
use mincq_core::{CQuat, CRational};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: i64, im: i64) -> CRational {
    CRational::from_ints(re, im)
}

pub fn q(v: [(i64, i64); 4]) -> CQuat {
    CQuat::from_ints(v)
}

pub fn rand_rat(r: &mut impl Rng) -> BigRational {
    rat(r.gen_range(-9..=9), r.gen_range(1..=5))
}

pub fn rand_c(r: &mut impl Rng) -> CRational {
    CRational::new(rand_rat(r), rand_rat(r))
}

pub fn rand_real_c(r: &mut impl Rng) -> CRational {
    CRational::real(rand_rat(r))
}

pub fn rand_q(r: &mut impl Rng) -> CQuat {
    CQuat::new(rand_c(r), rand_c(r), rand_c(r), rand_c(r))
}

pub fn rand_real_q(r: &mut impl Rng) -> CQuat {
    CQuat::new(
        rand_real_c(r),
        rand_real_c(r),
        rand_real_c(r),
        rand_real_c(r),
    )
}

/// Random polynomial of degree at most `deg` with coefficients from `coef`.
pub fn rand_qpoly<R: Rng>(r: &mut R, deg: i32, mut coef: impl FnMut(&mut R) -> CQuat) -> QLaurent {
    QLaurent::from_terms((0..=deg).map(|e| (e, coef(r))).collect::<Vec<_>>())
}

pub fn rand_cpoly<R: Rng>(
    r: &mut R,
    deg: i32,
    mut coef: impl FnMut(&mut R) -> CRational,
) -> CLaurent {
    CLaurent::from_terms((0..=deg).map(|e| (e, coef(r))).collect::<Vec<_>>())
}

/// Rational point on the unit circle from integers `m, n` not both zero.
pub fn pythagorean_unit(m: i64, n: i64) -> (BigRational, BigRational) {
    let d = m * m + n * n;
    (rat(m * m - n * n, d), rat(2 * m * n, d))
}

/// Catenoid curve `((z²−1)/(2z²))i − (ı(z²+1)/(2z²))j − z⁻¹k`.
pub fn catenoid_phi() -> QLaurent {
    let h = |n| CRational::from_fracs(n, 2, 0, 1);
    let ih = |n| CRational::from_fracs(0, 1, n, 2);
    let z = CRational::from(0);
    QLaurent::from_terms([
        (0, CQuat::vector(h(1), ih(-1), z.clone())),
        (-2, CQuat::vector(h(-1), ih(-1), z.clone())),
        (-1, CQuat::vector(z.clone(), z, c(-1, 0))),
    ])
}

/// Numerator `(1−3z²)i + ı(1−z²)j + 2zk` of the catenoid conjugator.
pub fn catenoid_a() -> QLaurent {
    QLaurent::from_terms([
        (0, q([(0, 0), (1, 0), (0, 1), (0, 0)])),
        (1, q([(0, 0), (0, 0), (0, 0), (2, 0)])),
        (2, q([(0, 0), (-3, 0), (0, -1), (0, 0)])),
    ])
}

/// Richmond curve `((z⁴−1)/z², ı(z⁴+1)/z², 2)`.
pub fn richmond_phi() -> QLaurent {
    QLaurent::from_terms([
        (2, q([(0, 0), (1, 0), (0, 1), (0, 0)])),
        (0, q([(0, 0), (0, 0), (0, 0), (2, 0)])),
        (-2, q([(0, 0), (-1, 0), (0, 1), (0, 0)])),
    ])
}

pub fn enneper_a() -> QLaurent {
    QLaurent::from_terms([(1, CQuat::one()), (0, CQuat::unit_j())])
}

pub fn ex1_a() -> QLaurent {
    QLaurent::from_terms([
        (1, q([(-5, 0), (0, 0), (-20, 0), (0, 0)])),
        (0, q([(25, 0), (0, 0), (0, 0), (0, 0)])),
    ])
}
