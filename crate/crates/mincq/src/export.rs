//! OBJ and CSV writers. Output depends only on the input values, so equal
//! inputs give byte-identical files.

use std::fmt::Write;

use mincq_core::phcurve::CurveSample;
use mincq_core::surface::{ClosedFormSurface, GeometryReport, Mesh};
use mincq_core::sylvester::{
    classify_rank, classify_rank_f64, det_closed_form, determinant, eigenvalues, operator_matrix,
};
use mincq_core::{CQuat, FQuat};
use num_complex::Complex64;

use crate::error::CliResult;

/// Shortest round-trip form, with `-0` printed as `0`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

/// `v x y z` lines in row-major order, then 1-based `f` quads.
pub fn mesh_to_obj(m: &Mesh) -> String {
    let mut s = String::new();
    for v in &m.vertices {
        let _ = writeln!(s, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
    }
    for q in &m.quads {
        let _ = writeln!(s, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
    }
    s
}

pub const GEOMETRY_HEADER: &str = "u,v,x,y,z,H,E,F,G";

/// Geometry reports at every mesh vertex, with the first fundamental form.
pub fn geometry_rows(
    x: &ClosedFormSurface,
    m: &Mesh,
) -> CliResult<Vec<(GeometryReport, [f64; 3])>> {
    m.params
        .iter()
        .zip(&m.vertices)
        .map(|(&(u, v), p)| Ok((x.geometry_report(u, v)?, *p)))
        .collect()
}

pub fn geometry_csv(rows: &[(GeometryReport, [f64; 3])]) -> String {
    let mut s = String::from(GEOMETRY_HEADER);
    s.push('\n');
    for (r, p) in rows {
        let cols = [
            r.u,
            r.v,
            p[0],
            p[1],
            p[2],
            r.mean_curvature,
            r.e_first,
            r.f_first,
            r.g_first,
        ];
        s.push_str(&cols.map(fmt_f64).join(","));
        s.push('\n');
    }
    s
}

pub fn curve_csv(samples: &[CurveSample]) -> String {
    let mut s = String::from("t,x,y,z,dx,dy,dz,speed\n");
    for c in samples {
        let cols = [
            c.t,
            c.point[0],
            c.point[1],
            c.point[2],
            c.tangent[0],
            c.tangent[1],
            c.tangent[2],
            c.speed,
        ];
        s.push_str(&cols.map(fmt_f64).join(","));
        s.push('\n');
    }
    s
}

fn fmt_c64(c: Complex64) -> String {
    let (re, im) = (fmt_f64(c.re), fmt_f64(c.im.abs()));
    format!("{re}{}{im}I", if c.im < 0.0 { "-" } else { "+" })
}

/// Operator matrix, determinant, eigenvalues and rank class of `z ↦ Fz + zG`.
pub fn sylvester_text(f: &FQuat, g: &FQuat) -> String {
    let mut s = String::new();
    let m = operator_matrix(f, g);
    let _ = writeln!(s, "matrix");
    for row in &m {
        let _ = writeln!(
            s,
            "  {}",
            row.iter()
                .map(|c| fmt_c64(*c))
                .collect::<Vec<_>>()
                .join("  ")
        );
    }
    let _ = writeln!(s, "determinant {}", fmt_c64(determinant(f, g)));
    let _ = writeln!(
        s,
        "closed-form determinant {}",
        fmt_c64(det_closed_form(f, g))
    );
    let ev = eigenvalues(f, g).map(fmt_c64);
    let _ = writeln!(s, "eigenvalues {}", ev.join(", "));
    let _ = writeln!(s, "rank class {:?}", classify_rank_f64(f, g, RANK_TOL));
    s
}

/// Exact matrix, determinant and rank class, plus floating eigenvalues.
pub fn sylvester_exact_text(f: &CQuat, g: &CQuat) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "matrix");
    for row in &operator_matrix(f, g) {
        let _ = writeln!(
            s,
            "  {}",
            row.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("  ")
        );
    }
    let _ = writeln!(s, "determinant {}", determinant(f, g));
    let _ = writeln!(s, "closed-form determinant {}", det_closed_form(f, g));
    let ev = eigenvalues(&f.to_f64(), &g.to_f64()).map(fmt_c64);
    let _ = writeln!(s, "eigenvalues {}", ev.join(", "));
    let _ = writeln!(s, "rank class {:?}", classify_rank(f, g));
    s
}

/// Relative tolerance for the floating rank classification.
pub const RANK_TOL: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obj_layout() {
        let m = Mesh {
            nu: 2,
            nv: 2,
            params: vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
            vertices: vec![
                [0.0, -0.0, 0.5],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [1.0, 1.0, 1e-20],
            ],
            quads: vec![[0, 1, 3, 2]],
            degenerate: vec![],
        };
        let obj = mesh_to_obj(&m);
        assert_eq!(
            obj,
            "v 0 0 0.5\nv 1 0 0\nv 0 1 0\nv 1 1 0.00000000000000000001\nf 1 2 4 3\n"
        );
        assert!(!obj.contains('\r'));
    }
}
