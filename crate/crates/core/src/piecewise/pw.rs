use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::discrete::LatticeFunction;
use crate::error::{Error, Result};
use crate::exactnum::{Cyclo, Rat, Scalar};
use crate::geometry::{
    integrate_simplex, triangulate, AlcoveComplex, Arrangement, Cell, Halfspace, Polyhedron,
    Window,
};
use crate::linalg::dot_rat;
use crate::poly::MultiPoly;

use super::series::OperatorSeries;

/// Cellwise polynomial function on the alcoves of a window. Values on walls
/// are not represented. Outside the window the function is known only where
/// a support hint rules it zero.
#[derive(Clone, Debug)]
pub struct PiecewisePoly<C: Scalar> {
    complex: Arc<AlcoveComplex>,
    polys: Vec<MultiPoly<C>>,
    support: Option<Polyhedron>,
}

fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_int(x)).collect()
}

fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn translate_polyhedron(p: &Polyhedron, shift: &[Rat]) -> Polyhedron {
    Polyhedron::new(
        p.dim(),
        p.halfspaces()
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), &h.offset + &dot_rat(&h.normal, shift)))
            .collect(),
    )
}

fn bounding_hint(parts: &[&Polyhedron]) -> Option<Polyhedron> {
    let mut pts = Vec::new();
    for p in parts {
        if !p.is_bounded() {
            return None;
        }
        pts.extend(p.vertices());
    }
    Window::bounding(&pts).map(|w| w.to_polyhedron())
}

impl<C: Scalar> PiecewisePoly<C> {
    /// Builds the function cell by cell on the complex of `arr` over `window`.
    pub fn from_cells(
        arr: &Arrangement,
        window: &Window,
        support: Option<Polyhedron>,
        mut f: impl FnMut(&Cell) -> Result<MultiPoly<C>>,
    ) -> Result<Self> {
        let complex = AlcoveComplex::build(arr, window);
        let polys = complex.cells().iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(PiecewisePoly {
            complex,
            polys,
            support,
        })
    }

    pub fn zero(arr: &Arrangement, window: &Window) -> Self {
        let complex = AlcoveComplex::build(arr, window);
        let polys = vec![MultiPoly::zero(arr.dim()); complex.len()];
        PiecewisePoly {
            complex,
            polys,
            support: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.complex.arrangement().dim()
    }

    pub fn window(&self) -> &Window {
        self.complex.window()
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.complex.arrangement()
    }

    pub fn complex(&self) -> &Arc<AlcoveComplex> {
        &self.complex
    }

    pub fn support(&self) -> Option<&Polyhedron> {
        self.support.as_ref()
    }

    pub fn with_support(mut self, support: Option<Polyhedron>) -> Self {
        self.support = support;
        self
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Cell, &MultiPoly<C>)> {
        self.complex.cells().iter().zip(&self.polys)
    }

    pub fn max_degree(&self) -> usize {
        self.polys.iter().map(MultiPoly::degree).max().unwrap_or(0)
    }

    /// The polynomial valid on the alcove of a regular point `v`.
    pub fn poly_at(&self, v: &[Rat]) -> Result<MultiPoly<C>> {
        match self.complex.locate(v) {
            Ok(i) => Ok(self.polys[i].clone()),
            Err(Error::WindowExceeded) => match &self.support {
                Some(s) if !s.contains(v) => {
                    self.arrangement().key(v)?;
                    Ok(MultiPoly::zero(self.dim()))
                }
                _ => Err(Error::WindowExceeded),
            },
            Err(e) => Err(e),
        }
    }

    pub fn eval(&self, v: &[Rat]) -> Result<C> {
        Ok(self.poly_at(v)?.eval_rat(v))
    }

    /// The common polynomial when every cell carries the same one.
    pub fn single_polynomial(&self) -> Option<MultiPoly<C>> {
        let first = self.polys.first()?;
        self.polys.iter().all(|p| p == first).then(|| first.clone())
    }

    pub fn map(&self, f: impl Fn(&MultiPoly<C>) -> MultiPoly<C>) -> Self {
        PiecewisePoly {
            complex: self.complex.clone(),
            polys: self.polys.iter().map(f).collect(),
            support: self.support.clone(),
        }
    }

    pub fn try_map<D: Scalar>(
        &self,
        f: impl Fn(&MultiPoly<C>) -> Result<MultiPoly<D>>,
    ) -> Result<PiecewisePoly<D>> {
        Ok(PiecewisePoly {
            complex: self.complex.clone(),
            polys: self.polys.iter().map(f).collect::<Result<_>>()?,
            support: self.support.clone(),
        })
    }

    pub fn to_cyclo(&self) -> PiecewisePoly<Cyclo> {
        self.try_map(|p| Ok(p.map_coeffs(|c| c.to_cyclo()))).unwrap()
    }

    pub fn to_rational(&self) -> Result<PiecewisePoly<Rat>> {
        self.try_map(|p| Ok(p.map_coeffs(|c| c.to_cyclo())).and_then(|q| q.to_rational()))
    }

    /// Cellwise directional derivative `∂_a`; the support hint is kept.
    pub fn partial_pw(&self, a: &[i64]) -> Self {
        self.map(|p| p.directional(a))
    }

    /// Operator series applied alcove by alcove.
    pub fn apply_series(&self, d: &OperatorSeries) -> Result<Self> {
        if self.max_degree() > d.truncation() {
            return Err(Error::TruncationTooLow {
                truncation: d.truncation(),
                degree: self.max_degree(),
            });
        }
        self.try_map(|p| d.apply(p))
    }

    /// Same function on another arrangement and window; points of the new
    /// window must be readable from `self`.
    pub fn refine(&self, arr: &Arrangement, window: &Window) -> Result<Self> {
        if !arr.refines(self.arrangement()) {
            return Err(Error::Invalid("target arrangement does not refine the source".into()));
        }
        Self::from_cells(arr, window, self.support.clone(), |c| self.poly_at(&c.interior))
    }

    /// `v ↦ f(v − λ)` on the shifted window.
    pub fn translate(&self, lambda: &[i64]) -> Self {
        let shift = rat_vec(lambda);
        let window = self.window().translate(lambda);
        let support = self.support.as_ref().map(|s| translate_polyhedron(s, &shift));
        Self::from_cells(self.arrangement(), &window, support, |c| {
            Ok(self.poly_at(&sub_vec(&c.interior, &shift))?.translate(&shift))
        })
        .expect("shifted cells lie in the source window")
    }

    /// `∇_a f = f − t_a f`. With a support hint the window grows to cover
    /// both terms; without one it shrinks to where both are known.
    pub fn nabla(&self, a: &[i64]) -> Self {
        let moved = self.translate(a);
        let window = match &self.support {
            Some(_) => self.window().hull(moved.window()),
            None => self
                .window()
                .intersect(moved.window())
                .unwrap_or_else(|| self.window().clone()),
        };
        let support = match (&self.support, &moved.support) {
            (Some(s), Some(t)) => bounding_hint(&[s, t]),
            _ => None,
        };
        Self::from_cells(self.arrangement(), &window, support, |c| {
            Ok(self.poly_at(&c.interior)?.sub(&moved.poly_at(&c.interior)?))
        })
        .expect("window covered by both terms")
    }

    /// `v ↦ f(center − v)` for a lattice center.
    pub fn reflect(&self, center: &[i64]) -> Self {
        let c = rat_vec(center);
        let w = self.window();
        let window = Window::new(sub_vec(&c, w.hi()), sub_vec(&c, w.lo())).unwrap();
        let support = self.support.as_ref().map(|s| {
            Polyhedron::new(
                s.dim(),
                s.halfspaces()
                    .iter()
                    .map(|h| {
                        let n: Vec<Rat> = h.normal.iter().map(|x| -x).collect();
                        Halfspace::new(n, &h.offset - &dot_rat(&h.normal, &c))
                    })
                    .collect(),
            )
        });
        Self::from_cells(self.arrangement(), &window, support, |cell| {
            Ok(self.poly_at(&sub_vec(&c, &cell.interior))?.reflect(&c))
        })
        .expect("reflected cells lie in the source window")
    }

    pub fn scale(&self, factor: &C) -> Self {
        self.map(|p| p.scale(factor))
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(&MultiPoly<C>, &MultiPoly<C>) -> MultiPoly<C>,
    ) -> Result<Self> {
        let arr = self.arrangement().union(other.arrangement());
        let (window, support) = match (&self.support, &other.support) {
            (Some(s), Some(t)) => (self.window().hull(other.window()), bounding_hint(&[s, t])),
            _ => (
                self.window()
                    .intersect(other.window())
                    .ok_or(Error::WindowExceeded)?,
                None,
            ),
        };
        Self::from_cells(&arr, &window, support, |c| {
            Ok(op(&self.poly_at(&c.interior)?, &other.poly_at(&c.interior)?))
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |p, q| p.add(q))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |p, q| p.sub(q))
    }

    /// Sum of several functions at once on the union arrangement.
    pub fn sum(parts: &[Self], window: &Window) -> Result<Self> {
        let first = parts.first().ok_or(Error::Invalid("empty sum".into()))?;
        let arr = parts
            .iter()
            .skip(1)
            .fold(first.arrangement().clone(), |a, p| a.union(p.arrangement()));
        Self::from_cells(&arr, window, None, |c| {
            let mut acc = MultiPoly::zero(arr.dim());
            for p in parts {
                acc.add_assign(&p.poly_at(&c.interior)?);
            }
            Ok(acc)
        })
    }

    /// First refined cell (of the shared window) where the two differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(Cell, MultiPoly<C>, MultiPoly<C>)>> {
        let arr = self.arrangement().union(other.arrangement());
        let window = self
            .window()
            .intersect(other.window())
            .ok_or(Error::WindowExceeded)?;
        let complex = AlcoveComplex::build(&arr, &window);
        for c in complex.cells() {
            let p = self.poly_at(&c.interior)?;
            let q = other.poly_at(&c.interior)?;
            if p != q {
                return Ok(Some((c.clone(), p, q)));
            }
        }
        Ok(None)
    }

    /// Exact identity of cell polynomials after common refinement on the
    /// intersection of the windows.
    pub fn equal_on_window(&self, other: &Self) -> bool {
        matches!(self.first_difference(other), Ok(None))
    }

    /// `∫` over the window.
    pub fn integrate(&self) -> C {
        let s = self.dim();
        let mut acc = C::zero();
        for (c, p) in self.pieces() {
            if p.is_zero() {
                continue;
            }
            for simplex in triangulate(&c.vertices, &c.halfspaces, s) {
                let verts: Vec<Vec<Rat>> = simplex.iter().map(|&i| c.vertices[i].clone()).collect();
                acc = acc.add(&integrate_simplex(p, &verts));
            }
        }
        acc
    }

    /// `lim_c f (λ)`: the polynomial of the alcove `λ + c` evaluated at `λ`.
    pub fn lim(&self, c: &Cell, lambda: &[i64]) -> Result<C> {
        let lam = rat_vec(lambda);
        let point: Vec<Rat> = c.interior.iter().zip(&lam).map(|(x, l)| x + l).collect();
        Ok(self.poly_at(&point)?.eval_rat(&lam))
    }

    /// Writes the polynomial of each cell as JSON-friendly rows.
    pub fn to_json(&self) -> serde_json::Value
    where
        C: Serialize,
    {
        #[derive(Serialize)]
        struct Piece<'a, C: Scalar + Serialize> {
            key: &'a [i64],
            interior: &'a [Rat],
            halfspaces: &'a [Halfspace],
            poly: &'a MultiPoly<C>,
        }
        #[derive(Serialize)]
        struct Doc<'a, C: Scalar + Serialize> {
            window: &'a Window,
            normals: &'a [Vec<i64>],
            support: Option<&'a Polyhedron>,
            cells: Vec<Piece<'a, C>>,
        }
        let doc = Doc {
            window: self.window(),
            normals: self.arrangement().normals(),
            support: self.support.as_ref(),
            cells: self
                .pieces()
                .map(|(c, p)| Piece {
                    key: &c.key,
                    interior: &c.interior,
                    halfspaces: &c.halfspaces,
                    poly: p,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }
}

/// Lattice restriction `λ ↦ lim_c f(λ)` on the given points.
pub fn lim_alcove<C: Scalar>(
    f: &PiecewisePoly<C>,
    c: &Cell,
    points: &[Vec<i64>],
) -> Result<LatticeFunction> {
    let mut values = Vec::with_capacity(points.len());
    for p in points {
        values.push((p.clone(), f.lim(c, p)?.to_cyclo()));
    }
    Ok(LatticeFunction::finite(f.dim(), values))
}

/// `Σ_λ f(λ) b(· − λ)` on `window`; `b` needs a bounded support hint.
pub fn semidiscrete_convolve<C: Scalar>(
    b: &PiecewisePoly<Rat>,
    f: &LatticeFunction,
    window: &Window,
) -> Result<PiecewisePoly<C>> {
    let support = b.support().ok_or(Error::UnboundedSupport)?;
    if !support.is_bounded() {
        return Err(Error::UnboundedSupport);
    }
    let sb = Window::bounding(&support.vertices()).ok_or(Error::UnboundedSupport)?;
    let ranges: Vec<(i64, i64)> = (0..window.dim())
        .map(|i| {
            (
                (&window.lo()[i] - &sb.hi()[i]).floor_i64(),
                (&window.hi()[i] - &sb.lo()[i]).ceil_i64(),
            )
        })
        .collect();
    let mut coeffs: BTreeMap<Vec<i64>, C> = BTreeMap::new();
    if let Some(sup) = f.finite_support() {
        for p in sup {
            if p.iter().zip(&ranges).all(|(x, r)| r.0 <= *x && *x <= r.1) {
                coeffs.insert(p.clone(), C::try_from_cyclo(&f.eval(&p)?)?);
            }
        }
    } else {
        for p in crate::geometry::lattice_box(&ranges) {
            let v = f.eval(&p)?;
            if !v.is_zero() {
                coeffs.insert(p, C::try_from_cyclo(&v)?);
            }
        }
    }
    let hint = (f.is_finite()).then(|| {
        let pts: Vec<Vec<Rat>> = coeffs.keys().map(|p| rat_vec(p)).collect();
        Window::bounding(&pts)
            .map(|w| w.minkowski(sb.lo(), sb.hi()).to_polyhedron())
            .unwrap_or_else(|| translate_polyhedron(support, &pts.first().cloned().unwrap_or_default()))
    });
    let hint = if coeffs.is_empty() { None } else { hint };
    PiecewisePoly::from_cells(b.arrangement(), window, hint, |c| {
        let mut acc = MultiPoly::zero(window.dim());
        for (lam, k) in &coeffs {
            let shift = rat_vec(lam);
            let q = b.poly_at(&sub_vec(&c.interior, &shift))?;
            if !q.is_zero() {
                acc.add_scaled(&q.translate(&shift).map_coeffs(C::from_rat), k);
            }
        }
        Ok(acc)
    })
}
