//! Small dense linear algebra: determinants, matrix-vector products and
//! exact reduced row echelon form over ℚ(ı).

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{CRational, Scalar};

/// Fixed-size square matrix, row-major.
pub type Mat4<S> = [[S; 4]; 4];

pub fn mat_vec<S: Scalar, const N: usize>(m: &[[S; N]; N], x: &[S; N]) -> [S; N] {
    core::array::from_fn(|r| (0..N).fold(S::zero(), |acc, c| acc + m[r][c].clone() * x[c].clone()))
}

/// Determinant by cofactor expansion. Division-free, so it is exact on any
/// commutative [`Scalar`]; intended for `N ≤ 4`.
pub fn determinant<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    match n {
        0 => S::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {
            let mut acc = S::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<S>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].clone() * determinant(&minor);
                acc = if col % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

pub fn determinant4<S: Scalar>(m: &Mat4<S>) -> S {
    let rows: Vec<Vec<S>> = m.iter().map(|r| r.to_vec()).collect();
    determinant(&rows)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<CRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Scalar::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !Scalar::is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let d = &f * &m[r][k];
                    m[i][k] = &m[i][k] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<CRational>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Basis of the right null space `{x : m·x = 0}`.
pub fn null_space(m: &[Vec<CRational>]) -> Vec<Vec<CRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![CRational::zero(); cols];
            x[f] = CRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -&w[r][f];
            }
            x
        })
        .collect()
}

/// Inverse of a 2×2 matrix, `None` if singular.
pub fn inverse2(m: &[[CRational; 2]; 2]) -> Option<[[CRational; 2]; 2]> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    let inv = det.inv().ok()?;
    Some([
        [&m[1][1] * &inv, -(&m[0][1] * &inv)],
        [-(&m[1][0] * &inv), &m[0][0] * &inv],
    ])
}

pub fn mul2(a: &[[CRational; 2]; 2], b: &[[CRational; 2]; 2]) -> [[CRational; 2]; 2] {
    core::array::from_fn(|r| core::array::from_fn(|c| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c]))
}
