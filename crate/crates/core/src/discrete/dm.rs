use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclo, Rat, Scalar};
use crate::geometry::{delta_set, lattice_box, zonotope, zonotope_bbox, Cell};
use crate::lattice::{cocircuits, fixed_sublist, toric_vertices, ToricVertex, WeightList};
use crate::linalg::{nullspace, solve_square, Matrix};
use crate::poly::MultiPoly;

use super::function::{LatticeFunction, Point};

/// `K(λ) = Σ_g g^λ p_g(λ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DMElement {
    pub terms: Vec<(ToricVertex, MultiPoly<Cyclo>)>,
}

impl DMElement {
    pub fn eval(&self, lambda: &[i64]) -> Cyclo {
        self.terms.iter().fold(Cyclo::zero(), |acc, (g, p)| {
            acc.add(&g.character(lambda).mul(&p.eval_int(lambda)))
        })
    }

    pub fn to_function(&self, dim: usize) -> LatticeFunction {
        LatticeFunction::quasi_poly(dim, self.terms.clone())
    }

    /// The `p_g` component, zero when absent.
    pub fn component(&self, g: &ToricVertex, nvars: usize) -> MultiPoly<Cyclo> {
        self.terms
            .iter()
            .filter(|(h, _)| h == g)
            .fold(MultiPoly::zero(nvars), |acc, (_, p)| acc.add(p))
    }
}

fn monomials(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=budget {
            cur.push(k);
            rec(n, budget - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_deg, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// Basis of `D(X) = {p : ∂_Y p = 0 for every cocircuit Y}` among
/// polynomials of degree ≤ |X| − s.
pub fn d_space_basis(x: &WeightList) -> Result<Vec<MultiPoly<Rat>>> {
    let cocs = cocircuits(x)?;
    let s = x.dim();
    let mons = monomials(s, (x.len() - s) as u32);
    // each column is the image of one monomial under every ∂_Y
    let images: Vec<Vec<MultiPoly<Rat>>> = mons
        .iter()
        .map(|e| {
            let m = MultiPoly::from_terms(s, [(e.clone(), Rat::one())]);
            cocs.iter()
                .map(|y| y.iter().fold(m.clone(), |p, &i| p.directional(x.get(i))))
                .collect()
        })
        .collect();
    let mut rows: BTreeMap<(usize, Vec<u32>), Vec<Rat>> = BTreeMap::new();
    for (col, imgs) in images.iter().enumerate() {
        for (yi, img) in imgs.iter().enumerate() {
            for (e, c) in img.terms() {
                rows.entry((yi, e.clone()))
                    .or_insert_with(|| vec![Rat::zero(); mons.len()])[col] = c.clone();
            }
        }
    }
    let m: Matrix<Rat> = rows.into_values().collect();
    Ok(nullspace(&m, mons.len())
        .into_iter()
        .map(|v| {
            MultiPoly::from_terms(s, mons.iter().cloned().zip(v))
        })
        .collect())
}

/// Basis of `DM(X)`: `ĝ p` for `g ∈ V(X)` and `p` in a basis of `D(X^g)`.
pub fn dm_space_basis(x: &WeightList) -> Result<Vec<DMElement>> {
    let mut out = Vec::new();
    for g in toric_vertices(x)? {
        let xg = x.sublist(&fixed_sublist(x, &g));
        for p in d_space_basis(&xg)? {
            out.push(DMElement {
                terms: vec![(g.clone(), p.to_cyclo())],
            });
        }
    }
    Ok(out)
}

/// Lattice points of `dilation · (Z(X) − Z(X))`.
pub fn certifying_grid(x: &WeightList, dilation: i64) -> Vec<Point> {
    let doubled = x.concat(&x.negated());
    let z = zonotope(&doubled);
    let ranges: Vec<(i64, i64)> = zonotope_bbox(&doubled)
        .iter()
        .map(|&(l, h)| (l * dilation, h * dilation))
        .collect();
    let d = Rat::from_int(dilation);
    lattice_box(&ranges)
        .into_iter()
        .filter(|p| {
            let q: Vec<Rat> = p.iter().map(|&v| Rat::from_int(v) / &d).collect();
            z.contains(&q)
        })
        .collect()
}

/// Checks `∇_Y K = 0` on the grid for every cocircuit `Y`.
pub fn is_annihilated(x: &WeightList, k: &LatticeFunction, grid: &[Point]) -> Result<bool> {
    for y in cocircuits(x)? {
        let ys: Vec<Vec<i64>> = y.iter().map(|&i| x.get(i).to_vec()).collect();
        let f = k.nabla_all(&ys);
        for p in grid {
            if !f.eval(p)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The unique `K ∈ DM(X)` taking the given values on `δ(c|X)`.
pub fn dm_interpolate(
    x: &WeightList,
    c: &Cell,
    values: &BTreeMap<Point, Cyclo>,
) -> Result<DMElement> {
    let pts = delta_set(c, x);
    if pts.len() != values.len() || pts.iter().any(|p| !values.contains_key(p)) {
        return Err(Error::Invalid("interpolation data must be keyed by δ(c|X)".into()));
    }
    let basis = dm_space_basis(x)?;
    if basis.len() != pts.len() {
        return Err(Error::SingularSystem);
    }
    let m: Matrix<Cyclo> = pts
        .iter()
        .map(|p| basis.iter().map(|b| b.eval(p)).collect())
        .collect();
    let rhs: Vec<Cyclo> = pts.iter().map(|p| values[p].clone()).collect();
    let coeffs = solve_square(&m, &rhs).ok_or(Error::SingularSystem)?;
    let mut by_vertex: BTreeMap<ToricVertex, MultiPoly<Cyclo>> = BTreeMap::new();
    for (b, cf) in basis.iter().zip(&coeffs) {
        for (g, p) in &b.terms {
            by_vertex
                .entry(g.clone())
                .or_insert_with(|| MultiPoly::zero(x.dim()))
                .add_scaled(p, cf);
        }
    }
    Ok(DMElement {
        terms: by_vertex.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
    })
}

/// `δ(c|X)`-evaluation matrix of the DM basis is invertible.
pub fn interpolation_is_regular(x: &WeightList, c: &Cell) -> Result<bool> {
    let pts = delta_set(c, x);
    let basis = dm_space_basis(x)?;
    if basis.len() != pts.len() {
        return Ok(false);
    }
    let m: Matrix<Cyclo> = pts
        .iter()
        .map(|p| basis.iter().map(|b| b.eval(p)).collect())
        .collect();
    Ok(!crate::linalg::det(&m).is_zero())
}
