use crate::exactnum::Rat;
use crate::lattice::{admissible_normals, enumerate_bases, WeightList};
use crate::linalg::{dot_int, solve_square, Matrix};

use super::alcove::Cell;
use super::polyhedron::{Halfspace, Polyhedron};
use super::window::{lattice_box, Window};

/// `Z(X) = {Σ t_i a_i : t ∈ [0,1]^N}` as an H-polytope; for a non-spanning
/// list the inequalities describe a cylinder over the zonotope.
pub fn zonotope(x: &WeightList) -> Polyhedron {
    let mut hs = Vec::new();
    for n in admissible_normals(x) {
        let (mut lo, mut hi) = (0i64, 0i64);
        for a in x.weights() {
            let d = dot_int(&n, a);
            if d < 0 {
                lo += d;
            } else {
                hi += d;
            }
        }
        hs.push(Halfspace::from_int(&n, Rat::from_int(hi)));
        let neg: Vec<i64> = n.iter().map(|v| -v).collect();
        hs.push(Halfspace::from_int(&neg, Rat::from_int(-lo)));
    }
    Polyhedron::new(x.dim(), hs)
}

/// Coordinatewise bounding box of `Z(X)` as integer ranges.
pub fn zonotope_bbox(x: &WeightList) -> Vec<(i64, i64)> {
    (0..x.dim())
        .map(|i| {
            x.weights().iter().fold((0, 0), |(lo, hi), a| {
                (lo + a[i].min(0), hi + a[i].max(0))
            })
        })
        .collect()
}

pub fn zonotope_window(x: &WeightList) -> Window {
    let b = zonotope_bbox(x);
    let lo: Vec<i64> = b.iter().map(|r| r.0).collect();
    let hi: Vec<i64> = b.iter().map(|r| r.1).collect();
    Window::from_ints(&lo, &hi).expect("spanning list has full bounding box")
}

/// `δ(c|X) = (ε − Z(X)) ∩ Λ` for a regular point `ε`.
pub fn delta_set_at(eps: &[Rat], x: &WeightList) -> Vec<Vec<i64>> {
    let z = zonotope(x);
    let ranges: Vec<(i64, i64)> = zonotope_bbox(x)
        .iter()
        .zip(eps)
        .map(|(&(lo, hi), e)| {
            ((e - Rat::from_int(hi)).ceil_i64(), (e - Rat::from_int(lo)).floor_i64())
        })
        .collect();
    lattice_box(&ranges)
        .into_iter()
        .filter(|lam| {
            let p: Vec<Rat> = eps
                .iter()
                .zip(lam)
                .map(|(e, &l)| e - Rat::from_int(l))
                .collect();
            z.contains(&p)
        })
        .collect()
}

pub fn delta_set(c: &Cell, x: &WeightList) -> Vec<Vec<i64>> {
    delta_set_at(&c.interior, x)
}

/// `v ∈ Cone(X)`, decided over the bases of `X`.
pub fn in_cone(x: &WeightList, v: &[Rat]) -> bool {
    enumerate_bases(x).iter().any(|(idx, _)| {
        // columns are the basis vectors
        let m: Matrix<Rat> = (0..x.dim())
            .map(|r| idx.iter().map(|&i| Rat::from_int(x.get(i)[r])).collect())
            .collect();
        solve_square(&m, v).is_some_and(|c| c.iter().all(|t| !t.is_negative()))
    })
}
