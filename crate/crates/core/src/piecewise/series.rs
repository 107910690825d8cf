use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, Cyclo, Rat, Scalar};
use crate::lattice::{ToricVertex, WeightList};
use crate::poly::MultiPoly;

/// One factor of a product of one-variable operator series in `∂_a`.
#[derive(Clone, PartialEq)]
pub enum Factor {
    /// `∂_a / (1 − e^{−∂_a})`.
    Todd(Vec<i64>),
    /// `(1 − e^{−∂_a}) / ∂_a`.
    CubeAverage(Vec<i64>),
    /// `1 − ζ e^{−∂_a}`.
    Twisted { a: Vec<i64>, zeta: Cyclo },
    /// `(1 − ζ e^{−∂_a})^{−1}` for `ζ ≠ 1`.
    TwistedInverse { a: Vec<i64>, zeta: Cyclo },
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Todd(a) => write!(f, "Todd{a:?}"),
            Factor::CubeAverage(a) => write!(f, "I{a:?}"),
            Factor::Twisted { a, zeta } => write!(f, "D[{zeta}]{a:?}"),
            Factor::TwistedInverse { a, zeta } => write!(f, "D^-1[{zeta}]{a:?}"),
        }
    }
}

/// Coefficients of `x / (1 − e^{−x})` up to degree `n`.
pub fn todd_coefficients(n: usize) -> Vec<Rat> {
    let f = cube_coefficients(n);
    let mut t = vec![Rat::one()];
    for k in 1..=n {
        let mut acc = Rat::zero();
        for j in 1..=k {
            acc -= &(&f[j] * &t[k - j]);
        }
        t.push(acc);
    }
    t
}

/// Coefficients of `(1 − e^{−x}) / x = Σ (−1)^k x^k / (k+1)!` up to degree `n`.
pub fn cube_coefficients(n: usize) -> Vec<Rat> {
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rat::new(sign, factorial(k as u32 + 1))
        })
        .collect()
}

/// Product of factor series, truncated at a total degree that is exact on
/// polynomials of degree at most `truncation`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSeries {
    factors: Vec<Factor>,
    truncation: usize,
}

impl OperatorSeries {
    pub fn identity() -> Self {
        OperatorSeries {
            factors: Vec::new(),
            truncation: 0,
        }
    }

    pub fn todd(y: &WeightList) -> Self {
        OperatorSeries {
            factors: y.weights().iter().map(|a| Factor::Todd(a.clone())).collect(),
            truncation: y.len(),
        }
    }

    /// `I(Y)`.
    pub fn cube_average(y: &WeightList) -> Self {
        OperatorSeries {
            factors: y
                .weights()
                .iter()
                .map(|a| Factor::CubeAverage(a.clone()))
                .collect(),
            truncation: y.len(),
        }
    }

    /// `D(g, Y)`.
    pub fn twisted(g: &ToricVertex, y: &WeightList) -> Self {
        OperatorSeries {
            factors: y
                .weights()
                .iter()
                .map(|a| Factor::Twisted {
                    a: a.clone(),
                    zeta: g.inverse().character(a),
                })
                .collect(),
            truncation: y.len(),
        }
    }

    /// `D(g, Y)^{−1}`; every `a ∈ Y` must satisfy `g^a ≠ 1`.
    pub fn twisted_inverse(g: &ToricVertex, y: &WeightList) -> Result<Self> {
        let mut factors = Vec::new();
        for a in y.weights() {
            if g.fixes(a) {
                return Err(Error::Invalid(format!("g fixes {a:?}; D_a^g is not invertible")));
            }
            factors.push(Factor::TwistedInverse {
                a: a.clone(),
                zeta: g.inverse().character(a),
            });
        }
        Ok(OperatorSeries {
            factors,
            truncation: y.len(),
        })
    }

    /// `self ∘ other`; the truncation is the larger of the two.
    pub fn then(mut self, other: OperatorSeries) -> Self {
        self.factors.extend(other.factors);
        self.truncation = self.truncation.max(other.truncation);
        self
    }

    pub fn with_truncation(mut self, d: usize) -> Self {
        self.truncation = d;
        self
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn apply<C: Scalar>(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        if p.is_zero() {
            return Ok(p.clone());
        }
        let deg = p.degree();
        if deg > self.truncation {
            return Err(Error::TruncationTooLow {
                truncation: self.truncation,
                degree: deg,
            });
        }
        let d = self.truncation;
        let mut cur = p.clone();
        for f in self.factors.iter().rev() {
            cur = match f {
                Factor::Todd(a) => derivative_series(&cur, a, &todd_coefficients(d)),
                Factor::CubeAverage(a) => derivative_series(&cur, a, &cube_coefficients(d)),
                Factor::Twisted { a, zeta } => {
                    let z = C::try_from_cyclo(zeta)?;
                    let mut out = cur.clone();
                    out.add_scaled(&cur.translate_int(a), &z.neg());
                    out
                }
                Factor::TwistedInverse { a, zeta } => twisted_inverse(&cur, a, zeta, d)?,
            };
        }
        Ok(cur)
    }
}

fn derivative_series<C: Scalar>(p: &MultiPoly<C>, a: &[i64], coeffs: &[Rat]) -> MultiPoly<C> {
    let mut out = MultiPoly::zero(p.nvars());
    let mut term = p.clone();
    for c in coeffs {
        if term.is_zero() {
            break;
        }
        out.add_scaled(&term, &C::from_rat(c));
        term = term.directional(a);
    }
    out
}

/// `(1−ζ)^{−1} Σ_k (−1)^k (ζ/(1−ζ))^k (1 − e^{−∂_a})^k`, where
/// `(1 − e^{−∂_a}) p = p − p(· − a)`.
fn twisted_inverse<C: Scalar>(
    p: &MultiPoly<C>,
    a: &[i64],
    zeta: &Cyclo,
    d: usize,
) -> Result<MultiPoly<C>> {
    let one = Cyclo::one();
    let inv = one.sub(zeta).inv().ok_or_else(|| {
        Error::Invalid("twisted inverse needs a nontrivial root of unity".into())
    })?;
    let ratio = C::try_from_cyclo(&zeta.mul(&inv).neg())?;
    let lead = C::try_from_cyclo(&inv)?;
    let mut out = MultiPoly::zero(p.nvars());
    let mut term = p.clone();
    let mut coeff = lead;
    for _ in 0..=d {
        if term.is_zero() {
            break;
        }
        out.add_scaled(&term, &coeff);
        term = term.sub(&term.translate_int(a));
        coeff = coeff.mul(&ratio);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    #[test]
    fn todd_numbers() {
        let t = todd_coefficients(4);
        assert_eq!(t, vec![r(1, 1), r(1, 2), r(1, 12), r(0, 1), r(-1, 720)]);
    }

    #[test]
    fn cube_average_on_linear() {
        let x = WeightList::scalars(&[1]).unwrap();
        let v = MultiPoly::<Rat>::var(0, 1);
        let out = OperatorSeries::cube_average(&x).apply(&v).unwrap();
        assert_eq!(out, v.sub(&MultiPoly::constant(r(1, 2), 1)));
        let zero = MultiPoly::<Rat>::zero(1);
        assert!(OperatorSeries::todd(&x).apply(&zero).unwrap().is_zero());
    }

    #[test]
    fn todd_inverts_cube_average() {
        let y = WeightList::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let v0 = MultiPoly::<Rat>::var(0, 2);
        let v1 = MultiPoly::<Rat>::var(1, 2);
        let p = v0.mul(&v1).add(&v1.pow(3)).add(&MultiPoly::constant(r(3, 1), 2));
        let back = OperatorSeries::todd(&y)
            .apply(&OperatorSeries::cube_average(&y).apply(&p).unwrap())
            .unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn twisted_inverse_inverts() {
        let g = ToricVertex::new(vec![r(1, 3)]);
        let y = WeightList::scalars(&[1, 2]).unwrap();
        let v = MultiPoly::<Cyclo>::var(0, 1);
        let p = v.pow(2).add(&v);
        let d = OperatorSeries::twisted(&g, &y);
        let dinv = OperatorSeries::twisted_inverse(&g, &y).unwrap();
        assert_eq!(dinv.apply(&d.apply(&p).unwrap()).unwrap(), p);
        assert_eq!(d.apply(&dinv.apply(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn truncation_guard() {
        let x = WeightList::scalars(&[1]).unwrap();
        let v = MultiPoly::<Rat>::var(0, 1);
        let err = OperatorSeries::todd(&x).apply(&v.pow(2)).unwrap_err();
        assert!(matches!(err, Error::TruncationTooLow { truncation: 1, degree: 2 }));
    }
}
