use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, Rat, Scalar};
use crate::lattice::IndexSet;
use crate::linalg::{det, dot_rat, rank, solve_square, Matrix};
use crate::poly::MultiPoly;

/// Closed halfspace `⟨normal, v⟩ ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        Halfspace { normal, offset }
    }

    pub fn from_int(normal: &[i64], offset: Rat) -> Self {
        Halfspace {
            normal: normal.iter().map(|&x| Rat::from_int(x)).collect(),
            offset,
        }
    }

    /// `offset - ⟨normal, v⟩`; nonnegative inside.
    pub fn slack(&self, v: &[Rat]) -> Rat {
        &self.offset - &dot_rat(&self.normal, v)
    }
}

/// Polyhedron in H-representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyhedron {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl Polyhedron {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Self {
        assert!(halfspaces.iter().all(|h| h.normal.len() == dim));
        Polyhedron { dim, halfspaces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn push(&mut self, h: Halfspace) {
        assert_eq!(h.normal.len(), self.dim);
        self.halfspaces.push(h);
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| !h.slack(v).is_negative())
    }

    pub fn contains_strictly(&self, v: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| h.slack(v).is_positive())
    }

    /// Vertices by solving every `dim`-subset of tight constraints; sorted.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        vertex_enumeration(self.dim, &self.halfspaces)
    }

    pub fn is_bounded(&self) -> bool {
        // bounded iff the recession cone meets the unit cube only at 0
        let mut rec: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), Rat::zero()))
            .collect();
        for i in 0..self.dim {
            let mut e = vec![Rat::zero(); self.dim];
            e[i] = Rat::one();
            rec.push(Halfspace::new(e.clone(), Rat::one()));
            e[i] = -Rat::one();
            rec.push(Halfspace::new(e, Rat::one()));
        }
        vertex_enumeration(self.dim, &rec)
            .iter()
            .all(|v| v.iter().all(Rat::is_zero))
    }

    /// Exact Lebesgue volume; zero for empty or lower-dimensional sets.
    pub fn volume(&self) -> Result<Rat> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let verts = self.vertices();
        if affine_rank(&verts) < self.dim {
            return Ok(Rat::zero());
        }
        Ok(triangulate(&verts, &self.halfspaces, self.dim)
            .iter()
            .map(|s| simplex_volume(&verts, s))
            .sum())
    }

    /// Exact integral of a polynomial over the polytope.
    pub fn integrate<C: Scalar>(&self, p: &MultiPoly<C>) -> Result<C> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let verts = self.vertices();
        integrate_convex(&verts, &self.halfspaces, self.dim, p)
    }
}

pub(crate) fn vertex_enumeration(dim: usize, hs: &[Halfspace]) -> Vec<Vec<Rat>> {
    let mut out = BTreeSet::new();
    if dim == 0 {
        return vec![Vec::new()];
    }
    for idx in crate::lattice::subsets_of(hs.len(), dim) {
        let m: Matrix<Rat> = idx.iter().map(|&i| hs[i].normal.clone()).collect();
        let rhs: Vec<Rat> = idx.iter().map(|&i| hs[i].offset.clone()).collect();
        let Some(v) = solve_square(&m, &rhs) else {
            continue;
        };
        if hs.iter().all(|h| !h.slack(&v).is_negative()) {
            out.insert(v);
        }
    }
    out.into_iter().collect()
}

/// Dimension of the affine hull of a point set (`-1` encoded as 0 for empty).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let m: Matrix<Rat> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&m)
}

fn affine_rank_of(verts: &[Vec<Rat>], idx: &[usize]) -> usize {
    let pts: Vec<Vec<Rat>> = idx.iter().map(|&i| verts[i].clone()).collect();
    affine_rank(&pts)
}

/// Pulling triangulation of a convex polytope given by its vertices and an
/// H-representation; returns simplices as vertex index lists.
pub fn triangulate(verts: &[Vec<Rat>], hs: &[Halfspace], dim: usize) -> Vec<IndexSet> {
    let tight: Vec<BTreeSet<usize>> = hs
        .iter()
        .map(|h| {
            (0..verts.len())
                .filter(|&i| h.slack(&verts[i]).is_zero())
                .collect()
        })
        .collect();
    let all: IndexSet = (0..verts.len()).collect();
    let mut out = Vec::new();
    pull(verts, &tight, &all, dim, &mut Vec::new(), &mut out);
    out
}

fn pull(
    verts: &[Vec<Rat>],
    tight: &[BTreeSet<usize>],
    face: &IndexSet,
    dim: usize,
    apex: &mut Vec<usize>,
    out: &mut Vec<IndexSet>,
) {
    if dim == 0 {
        let mut s = apex.clone();
        s.push(face[0]);
        out.push(s);
        return;
    }
    let v0 = face[0];
    let mut subfaces: BTreeSet<IndexSet> = BTreeSet::new();
    for t in tight {
        let g: IndexSet = face.iter().copied().filter(|i| t.contains(i)).collect();
        if g.len() < dim || g.len() == face.len() || g.contains(&v0) {
            continue;
        }
        if affine_rank_of(verts, &g) == dim - 1 {
            subfaces.insert(g);
        }
    }
    apex.push(v0);
    for g in &subfaces {
        pull(verts, tight, g, dim - 1, apex, out);
    }
    apex.pop();
}

fn simplex_matrix(verts: &[Vec<Rat>], simplex: &[usize]) -> Matrix<Rat> {
    let base = &verts[simplex[0]];
    simplex[1..]
        .iter()
        .map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect()
}

pub fn simplex_volume(verts: &[Vec<Rat>], simplex: &[usize]) -> Rat {
    let m = simplex_matrix(verts, simplex);
    let k = m.len() as u32;
    det(&m).abs() / Rat::from_bigint(factorial(k))
}

/// `∫_simplex p` for a full-dimensional simplex with the given vertices.
pub fn integrate_simplex<C: Scalar>(p: &MultiPoly<C>, vertices: &[Vec<Rat>]) -> C {
    let s = p.nvars();
    let base = &vertices[0];
    let edges: Vec<Vec<Rat>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let jac = det(&edges).abs();
    // v_i = base_i + Σ_k t_k edge_k[i]
    let subs: Vec<MultiPoly<C>> = (0..s)
        .map(|i| {
            let lin: Vec<C> = edges.iter().map(|e| C::from_rat(&e[i])).collect();
            MultiPoly::affine(&lin, C::from_rat(&base[i]))
        })
        .collect();
    p.compose(&subs).integrate_standard_simplex().mul_rat(&jac)
}

pub(crate) fn integrate_convex<C: Scalar>(
    verts: &[Vec<Rat>],
    hs: &[Halfspace],
    dim: usize,
    p: &MultiPoly<C>,
) -> Result<C> {
    if verts.is_empty() || affine_rank(verts) < dim {
        return Ok(C::zero());
    }
    let mut acc = C::zero();
    for simplex in triangulate(verts, hs, dim) {
        let pts: Vec<Vec<Rat>> = simplex.iter().map(|&i| verts[i].clone()).collect();
        acc = acc.add(&integrate_simplex(p, &pts));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn unit_square() -> Polyhedron {
        Polyhedron::new(
            2,
            vec![
                Halfspace::from_int(&[1, 0], r(1)),
                Halfspace::from_int(&[-1, 0], r(0)),
                Halfspace::from_int(&[0, 1], r(1)),
                Halfspace::from_int(&[0, -1], r(0)),
            ],
        )
    }

    #[test]
    fn volumes() {
        assert_eq!(unit_square().volume().unwrap(), r(1));
        let simplex = Polyhedron::new(
            2,
            vec![
                Halfspace::from_int(&[-1, 0], r(0)),
                Halfspace::from_int(&[0, -1], r(0)),
                Halfspace::from_int(&[1, 1], r(1)),
            ],
        );
        assert_eq!(simplex.volume().unwrap(), Rat::new(1, 2));
        let half = Polyhedron::new(1, vec![Halfspace::from_int(&[1], r(0))]);
        assert!(matches!(half.volume(), Err(Error::Unbounded)));
        let flat = Polyhedron::new(
            2,
            vec![
                Halfspace::from_int(&[1, 0], r(0)),
                Halfspace::from_int(&[-1, 0], r(0)),
                Halfspace::from_int(&[0, 1], r(1)),
                Halfspace::from_int(&[0, -1], r(0)),
            ],
        );
        assert_eq!(flat.volume().unwrap(), r(0));
    }

    #[test]
    fn cube_and_integral() {
        let mut hs = Vec::new();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            hs.push(Halfspace::from_int(&e, r(2)));
            e[i] = -1;
            hs.push(Halfspace::from_int(&e, r(0)));
        }
        let cube = Polyhedron::new(3, hs);
        assert_eq!(cube.volume().unwrap(), r(8));
        let x = MultiPoly::<Rat>::var(0, 2);
        // ∫_[0,1]^2 x = 1/2
        assert_eq!(unit_square().integrate(&x).unwrap(), Rat::new(1, 2));
        assert_eq!(unit_square().integrate(&x.mul(&x)).unwrap(), Rat::new(1, 3));
    }
}
