use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::discrete::RegularFace;
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::geometry::{central_chambers, zonotope, zonotope_window, Arrangement, Window};
use crate::lattice::WeightList;
use crate::linalg::dot_int;
use crate::poly::MultiPoly;

use super::cone::ConeSpline;
use super::pw::PiecewisePoly;

/// Kind of one factor of a spline convolution product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartKind {
    /// Segment `[0, a]`.
    Interval,
    /// Ray `a·R_{≥0}`.
    Ray,
    /// Ray `−a·R_{≥0}`.
    NegRay,
}

/// `Σ c_μ T(v − μ)` for one cone spline `T`; evaluable at any regular point.
#[derive(Debug, Clone)]
pub struct SplineSum {
    cone: Arc<ConeSpline>,
    terms: Vec<(Rat, Vec<i64>)>,
}

impl SplineSum {
    pub fn cone(&self) -> &ConeSpline {
        &self.cone
    }

    pub fn terms(&self) -> &[(Rat, Vec<i64>)] {
        &self.terms
    }

    pub fn poly_at(&self, v: &[Rat]) -> Result<MultiPoly<Rat>> {
        let mut acc = MultiPoly::zero(v.len());
        for (c, mu) in &self.terms {
            let m: Vec<Rat> = mu.iter().map(|&x| Rat::from_int(x)).collect();
            let w: Vec<Rat> = v.iter().zip(&m).map(|(a, b)| a - b).collect();
            let p = self.cone.poly_at(&w)?;
            if !p.is_zero() {
                acc.add_scaled(&p.translate(&m), c);
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, v: &[Rat]) -> Result<Rat> {
        Ok(self.poly_at(v)?.eval(v))
    }

    /// Tabulates on the alcoves of `arr`, which must refine the cone's
    /// arrangement.
    pub fn materialize(
        &self,
        arr: &Arrangement,
        window: &Window,
        support: Option<crate::geometry::Polyhedron>,
    ) -> Result<PiecewisePoly<Rat>> {
        if !arr.refines(self.cone.arrangement()) {
            return Err(Error::Invalid("arrangement too coarse for spline".into()));
        }
        PiecewisePoly::from_cells(arr, window, support, |c| self.poly_at(&c.interior))
    }
}

fn negate(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// The convolution of the listed factors as a sum of translates of one
/// cone spline. Each segment `[0, a]` is `∇_a` applied to the ray it spans
/// on the side of a functional `φ` positive on every ray factor.
pub fn spline_sum(dim: usize, parts: &[(Vec<i64>, PartKind)]) -> Result<SplineSum> {
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut segs: Vec<Vec<i64>> = Vec::new();
    for (a, k) in parts {
        if a.len() != dim {
            return Err(Error::Invalid("factor dimension mismatch".into()));
        }
        match k {
            PartKind::Interval => segs.push(a.clone()),
            PartKind::Ray => rays.push(a.clone()),
            PartKind::NegRay => rays.push(negate(a)),
        }
    }
    let all: Vec<Vec<i64>> = rays.iter().chain(&segs).cloned().collect();
    WeightList::new(dim, all.clone())?.require_spanning()?;
    let phi = central_chambers(dim, &all)
        .into_iter()
        .find(|p| rays.iter().all(|a| dot_int(p, a) > 0))
        .ok_or(Error::NotPointed)?;
    let mut sign = 1i64;
    let mut cone_rays = rays;
    for a in &segs {
        if dot_int(&phi, a) > 0 {
            cone_rays.push(a.clone());
        } else {
            sign = -sign;
            cone_rays.push(negate(a));
        }
    }
    let cone = ConeSpline::new(&WeightList::new(dim, cone_rays)?, Rat::from_int(sign))?;
    let mut terms: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    terms.insert(vec![0; dim], Rat::one());
    for a in &segs {
        let mut next = terms.clone();
        for (mu, c) in &terms {
            let shifted: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + y).collect();
            let e = next.entry(shifted).or_insert_with(Rat::zero);
            *e -= c;
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    Ok(SplineSum {
        cone: Arc::new(cone),
        terms: terms.into_iter().map(|(mu, c)| (c, mu)).collect(),
    })
}

/// Exact piecewise polynomial of the convolution of the listed factors on `W`.
/// With no ray factors the function is compactly supported on the zonotope
/// of the segments, and the window is widened to contain it.
pub fn build_spline(parts: &[(Vec<i64>, PartKind)], w: &Window) -> Result<PiecewisePoly<Rat>> {
    let dim = w.dim();
    let sum = spline_sum(dim, parts)?;
    let all: Vec<Vec<i64>> = parts.iter().map(|(a, _)| a.clone()).collect();
    let x = WeightList::new(dim, all)?;
    let arr = Arrangement::of(&x);
    if parts.iter().all(|(_, k)| *k == PartKind::Interval) {
        let window = w.hull(&zonotope_window(&x));
        sum.materialize(&arr, &window, Some(zonotope(&x)))
    } else {
        sum.materialize(&arr, w, None)
    }
}

/// `T_X^F = (−1)^{|B|} T_{A ∪ −B}` for the split `X = A ∪ B` by `F`.
pub fn polarized_cone(x: &WeightList, face: &RegularFace) -> Result<ConeSpline> {
    let (y, b) = face.polarized_list(x)?;
    let sign = if b.len() % 2 == 0 { 1 } else { -1 };
    ConeSpline::new(&y, Rat::from_int(sign))
}

pub fn build_t_polarized(x: &WeightList, face: &RegularFace, w: &Window) -> Result<PiecewisePoly<Rat>> {
    let cone = polarized_cone(x, face)?;
    let sum = SplineSum {
        cone: Arc::new(cone),
        terms: vec![(Rat::one(), vec![0; x.dim()])],
    };
    sum.materialize(&Arrangement::of(x), w, None)
}

/// `B_X = ∇_X T_X^F` as a sum of translates.
pub fn box_spline_sum(x: &WeightList) -> Result<SplineSum> {
    let parts: Vec<(Vec<i64>, PartKind)> = x
        .weights()
        .iter()
        .map(|a| (a.clone(), PartKind::Interval))
        .collect();
    spline_sum(x.dim(), &parts)
}

/// Box spline on `W` widened to contain `Z(X)`; support hint `Z(X)`.
pub fn build_box(x: &WeightList, w: &Window) -> Result<PiecewisePoly<Rat>> {
    x.require_spanning()?;
    let sum = box_spline_sum(x)?;
    let window = w.hull(&zonotope_window(x));
    sum.materialize(&Arrangement::of(x), &window, Some(zonotope(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{spline_point_oracle, SplineKind};

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    #[test]
    fn hat_profile() {
        let x = WeightList::scalars(&[1, 1]).unwrap();
        let b = build_box(&x, &Window::from_ints(&[-1], &[3]).unwrap()).unwrap();
        let v = MultiPoly::var(0, 1);
        assert_eq!(b.poly_at(&[r(1, 2)]).unwrap(), v);
        assert_eq!(
            b.poly_at(&[r(3, 2)]).unwrap(),
            MultiPoly::constant(Rat::from_int(2), 1).sub(&v)
        );
        assert!(b.poly_at(&[r(5, 2)]).unwrap().is_zero());
        assert!(b.poly_at(&[r(-1, 2)]).unwrap().is_zero());
        assert_eq!(b.integrate(), Rat::one());
    }

    #[test]
    fn negative_interval_and_rays() {
        let w = Window::from_ints(&[-3], &[3]).unwrap();
        let b = build_spline(&[(vec![-1], PartKind::Interval)], &w).unwrap();
        assert_eq!(b.eval(&[r(-1, 2)]).unwrap(), Rat::one());
        assert!(b.eval(&[r(1, 2)]).unwrap().is_zero());
        let t = build_spline(&[(vec![1], PartKind::Ray), (vec![1], PartKind::Ray)], &w).unwrap();
        assert_eq!(t.eval(&[r(5, 2)]).unwrap(), r(5, 2));
        let n = build_spline(&[(vec![1], PartKind::NegRay)], &w).unwrap();
        assert_eq!(n.eval(&[r(-5, 2)]).unwrap(), Rat::one());
        assert!(n.eval(&[r(5, 2)]).unwrap().is_zero());
    }

    #[test]
    fn planar_box_matches_oracle() {
        let x = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).unwrap();
        let s = box_spline_sum(&x).unwrap();
        for v in [[r(1, 3), r(1, 7)], [r(3, 2), r(1, 5)], [r(6, 5), r(-1, 3)], [r(2, 7), r(9, 8)]] {
            assert_eq!(
                s.eval(&v).unwrap(),
                spline_point_oracle(&x, SplineKind::Box, &v).unwrap(),
                "{v:?}"
            );
        }
    }

    #[test]
    fn polarized_examples() {
        let x = WeightList::scalars(&[1]).unwrap();
        let w = Window::from_ints(&[-2], &[2]).unwrap();
        let neg = build_t_polarized(&x, &RegularFace::from_ints(&[-1]), &w).unwrap();
        assert_eq!(neg.eval(&[r(-1, 2)]).unwrap(), -Rat::one());
        assert!(neg.eval(&[r(1, 2)]).unwrap().is_zero());
    }
}
