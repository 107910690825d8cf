use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclo, Rat, Scalar};
use crate::lattice::ToricVertex;
use crate::poly::MultiPoly;

use super::partition::PartitionFn;

pub type Point = Vec<i64>;

#[derive(Debug)]
enum Kind {
    Finite(BTreeMap<Point, Cyclo>),
    Partition(PartitionFn),
    /// `Σ_g g^λ p_g(λ)`.
    QuasiPoly(Vec<(ToricVertex, MultiPoly<Cyclo>)>),
    /// `Σ c_i · f_i(λ − μ_i)`.
    Combination(Vec<(Cyclo, Point, LatticeFunction)>),
    /// `g^λ f(λ)`.
    Twist(ToricVertex, LatticeFunction),
}

/// Function `Λ = Z^s → Q(ζ)`; cheap to clone.
#[derive(Clone)]
pub struct LatticeFunction {
    dim: usize,
    kind: Arc<Kind>,
}

impl fmt::Debug for LatticeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            Kind::Finite(m) => write!(f, "Finite({m:?})"),
            Kind::Partition(p) => write!(f, "Partition({:?})", p.weights()),
            Kind::QuasiPoly(t) => write!(f, "QuasiPoly({t:?})"),
            Kind::Combination(t) => write!(f, "Combination({} terms)", t.len()),
            Kind::Twist(g, _) => write!(f, "Twist({g})"),
        }
    }
}

fn shifted(a: &[i64], b: &[i64], sign: i64) -> Point {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

impl LatticeFunction {
    fn wrap(dim: usize, kind: Kind) -> Self {
        LatticeFunction {
            dim,
            kind: Arc::new(kind),
        }
    }

    /// Finite-support function; zero values are dropped.
    pub fn finite(dim: usize, values: impl IntoIterator<Item = (Point, Cyclo)>) -> Self {
        let map: BTreeMap<Point, Cyclo> = values
            .into_iter()
            .filter(|(p, v)| {
                assert_eq!(p.len(), dim);
                !v.is_zero()
            })
            .collect();
        Self::wrap(dim, Kind::Finite(map))
    }

    pub fn finite_rat(dim: usize, values: impl IntoIterator<Item = (Point, Rat)>) -> Self {
        Self::finite(dim, values.into_iter().map(|(p, v)| (p, Cyclo::from_rat(v))))
    }

    pub fn zero(dim: usize) -> Self {
        Self::finite(dim, [])
    }

    pub fn delta0(dim: usize) -> Self {
        Self::finite(dim, [(vec![0; dim], Cyclo::one())])
    }

    pub(crate) fn partition(p: PartitionFn) -> Self {
        Self::wrap(p.dim(), Kind::Partition(p))
    }

    pub fn quasi_poly(dim: usize, terms: Vec<(ToricVertex, MultiPoly<Cyclo>)>) -> Self {
        Self::wrap(dim, Kind::QuasiPoly(terms))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, lambda: &[i64]) -> Result<Cyclo> {
        match &*self.kind {
            Kind::Finite(m) => Ok(m.get(lambda).cloned().unwrap_or_else(Cyclo::zero)),
            Kind::Partition(p) => Ok(Cyclo::from_rat(p.eval(lambda)?)),
            Kind::QuasiPoly(terms) => {
                let mut acc = Cyclo::zero();
                for (g, p) in terms {
                    acc = acc.add(&g.character(lambda).mul(&p.eval_int(lambda)));
                }
                Ok(acc)
            }
            Kind::Combination(terms) => {
                let mut acc = Cyclo::zero();
                for (c, mu, f) in terms {
                    let v = f.eval(&shifted(lambda, mu, -1))?;
                    acc = acc.add(&c.mul(&v));
                }
                Ok(acc)
            }
            Kind::Twist(g, f) => Ok(g.character(lambda).mul(&f.eval(lambda)?)),
        }
    }

    /// Value projected to `Q`; `NotRational` otherwise.
    pub fn eval_rat(&self, lambda: &[i64]) -> Result<Rat> {
        self.eval(lambda)?.to_rational()
    }

    /// Exact support when it is certified finite.
    pub fn finite_support(&self) -> Option<BTreeSet<Point>> {
        match &*self.kind {
            Kind::Finite(m) => Some(m.keys().cloned().collect()),
            Kind::Partition(_) | Kind::QuasiPoly(_) => None,
            Kind::Combination(terms) => {
                let mut out = BTreeSet::new();
                for (_, mu, f) in terms {
                    for p in f.finite_support()? {
                        out.insert(shifted(&p, mu, 1));
                    }
                }
                Some(out)
            }
            Kind::Twist(_, f) => f.finite_support(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_support().is_some()
    }

    /// Collapses a finitely supported function into an explicit table.
    pub fn materialize(&self) -> Result<LatticeFunction> {
        if matches!(&*self.kind, Kind::Finite(_)) {
            return Ok(self.clone());
        }
        let support = self.finite_support().ok_or(Error::UnboundedSupport)?;
        let mut vals = Vec::new();
        for p in support {
            let v = self.eval(&p)?;
            vals.push((p, v));
        }
        Ok(Self::finite(self.dim, vals))
    }

    /// Nonzero entries when finite.
    pub fn entries(&self) -> Result<Vec<(Point, Cyclo)>> {
        match &*self.materialize()?.kind {
            Kind::Finite(m) => Ok(m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
            _ => unreachable!(),
        }
    }

    pub fn linear_combination(dim: usize, terms: Vec<(Cyclo, Point, LatticeFunction)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|t| !t.0.is_zero()).collect();
        let out = Self::wrap(dim, Kind::Combination(terms));
        if out.is_finite() {
            out.materialize().expect("finite support")
        } else {
            out
        }
    }

    /// `(t_μ f)(λ) = f(λ − μ)`.
    pub fn translate(&self, mu: &[i64]) -> Self {
        Self::linear_combination(self.dim, vec![(Cyclo::one(), mu.to_vec(), self.clone())])
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Self::linear_combination(self.dim, vec![(c.clone(), vec![0; self.dim], self.clone())])
    }

    pub fn add(&self, other: &Self) -> Self {
        let z = vec![0; self.dim];
        Self::linear_combination(
            self.dim,
            vec![
                (Cyclo::one(), z.clone(), self.clone()),
                (Cyclo::one(), z, other.clone()),
            ],
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclo::one().neg()))
    }

    /// `∇_a f = f − t_a f`.
    pub fn nabla(&self, a: &[i64]) -> Self {
        self.twisted_nabla_by(a, &Cyclo::one())
    }

    /// `∇_Y` over a list of vectors.
    pub fn nabla_all(&self, ys: &[Vec<i64>]) -> Self {
        ys.iter().fold(self.clone(), |f, a| f.nabla(a))
    }

    fn twisted_nabla_by(&self, a: &[i64], zeta: &Cyclo) -> Self {
        Self::linear_combination(
            self.dim,
            vec![
                (Cyclo::one(), vec![0; self.dim], self.clone()),
                (zeta.neg(), a.to_vec(), self.clone()),
            ],
        )
    }

    /// `∇(g, Y) f` with `∇_a^g = 1 − g^{−a} t_a`.
    pub fn twisted_nabla(&self, g: &ToricVertex, ys: &[Vec<i64>]) -> Self {
        ys.iter().fold(self.clone(), |f, a| {
            f.twisted_nabla_by(a, &g.inverse().character(a))
        })
    }

    /// `(ĝ f)(λ) = g^λ f(λ)`.
    pub fn g_hat(&self, g: &ToricVertex) -> Self {
        if g.is_identity() {
            return self.clone();
        }
        let out = Self::wrap(self.dim, Kind::Twist(g.clone(), self.clone()));
        if out.is_finite() {
            out.materialize().expect("finite support")
        } else {
            out
        }
    }

    /// Table over the given points.
    pub fn tabulate(&self, points: &[Point]) -> Result<Vec<(Point, Cyclo)>> {
        points
            .iter()
            .map(|p| Ok((p.clone(), self.eval(p)?)))
            .collect()
    }

    /// Exact equality on a finite set of points.
    pub fn agrees_on(&self, other: &Self, points: &[Point]) -> Result<bool> {
        for p in points {
            if self.eval(p)? != other.eval(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One tabulated row; values keep their exact cyclotomic form.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub point: Point,
    pub value: Cyclo,
    /// The value again when it lies in `Q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<Rat>,
}

pub fn table_rows(f: &LatticeFunction, points: &[Point]) -> Result<Vec<TableRow>> {
    Ok(f.tabulate(points)?
        .into_iter()
        .map(|(point, value)| TableRow {
            point,
            rational: value.to_rational().ok(),
            value,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;

    fn c(n: i64) -> Cyclo {
        Cyclo::from_rat(Rat::from_int(n))
    }

    #[test]
    fn twisted_nabla_on_delta() {
        let g = ToricVertex::new(vec![Rat::new(1, 2)]);
        let f = LatticeFunction::delta0(1).twisted_nabla(&g, &[vec![2]]);
        assert_eq!(f.eval(&[0]).unwrap(), c(1));
        assert_eq!(f.eval(&[2]).unwrap(), c(-1));
        assert_eq!(f.finite_support().unwrap().len(), 2);
    }

    #[test]
    fn conjugation_identity() {
        // ĝ^{-1} ∇_Y ĝ = ∇(g, Y)
        let g = ToricVertex::new(vec![Rat::new(1, 3), Rat::new(2, 3)]);
        let k = LatticeFunction::finite(
            2,
            [(vec![0, 0], c(2)), (vec![1, -1], c(-3)), (vec![2, 1], c(5))],
        );
        let ys = vec![vec![1, 0], vec![1, 1]];
        let lhs = k.g_hat(&g).nabla_all(&ys).g_hat(&g.inverse());
        let rhs = k.twisted_nabla(&g, &ys);
        let pts = crate::geometry::lattice_box(&[(-3, 4), (-3, 4)]);
        assert!(lhs.agrees_on(&rhs, &pts).unwrap());
        assert!(k.g_hat(&ToricVertex::identity(2)).agrees_on(&k, &pts).unwrap());
    }
}
