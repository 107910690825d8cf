//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{factorial, Cyclo, Rat, Scalar};

pub type Exponent = Vec<u32>;

/// Polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(C::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    /// Affine form `c0 + Σ c_i v_i`.
    pub fn affine(linear: &[C], constant: C) -> Self {
        let n = linear.len();
        let mut p = Self::constant(constant, n);
        for (i, c) in linear.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &C) {
        if factor.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.mul(factor));
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg());
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn scale(&self, factor: &C) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul(factor)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&x.pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval_rat(&self, point: &[Rat]) -> C {
        let p: Vec<C> = point.iter().map(C::from_rat).collect();
        self.eval(&p)
    }

    pub fn eval_int(&self, point: &[i64]) -> C {
        let p: Vec<C> = point.iter().map(|&x| C::from_int(x)).collect();
        self.eval(&p)
    }

    /// Substitute variable `i` by `subs[i]`; the result lives in the ring of
    /// the substituted polynomials.
    pub fn compose(&self, subs: &[MultiPoly<C>]) -> MultiPoly<C> {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut powers: Vec<Vec<MultiPoly<C>>> = subs
            .iter()
            .map(|s| vec![MultiPoly::one(s.nvars), s.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
            }
            out.add_assign(&t);
        }
        out
    }

    /// `v ↦ p(v - shift)`.
    pub fn translate(&self, shift: &[Rat]) -> Self {
        if shift.iter().all(Rat::is_zero) || self.is_zero() {
            return self.clone();
        }
        let n = self.nvars;
        let subs: Vec<MultiPoly<C>> = (0..n)
            .map(|i| {
                let mut lin = vec![C::zero(); n];
                lin[i] = C::one();
                MultiPoly::affine(&lin, C::from_rat(&-&shift[i]))
            })
            .collect();
        self.compose(&subs)
    }

    pub fn translate_int(&self, shift: &[i64]) -> Self {
        let s: Vec<Rat> = shift.iter().map(|&x| Rat::from_int(x)).collect();
        self.translate(&s)
    }

    /// `v ↦ p(center - v)`.
    pub fn reflect(&self, center: &[Rat]) -> Self {
        let n = self.nvars;
        let subs: Vec<MultiPoly<C>> = (0..n)
            .map(|i| {
                let mut lin = vec![C::zero(); n];
                lin[i] = C::one().neg();
                MultiPoly::affine(&lin, C::from_rat(&center[i]))
            })
            .collect();
        self.compose(&subs)
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul_rat(&Rat::from_int(e[i] as i64)));
        }
        out
    }

    /// Directional derivative `∂_a`.
    pub fn directional(&self, a: &[i64]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                out.add_scaled(&self.partial(i), &C::from_int(ai));
            }
        }
        out
    }

    /// Antiderivative in variable `i` with zero constant.
    pub fn integrate_var(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += 1;
            let k = e2[i] as i64;
            out.add_term(e2, c.mul_rat(&Rat::new(1, k)));
        }
        out
    }

    /// Embed into a ring with one more variable, appended last.
    pub fn add_var(&self) -> Self {
        MultiPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.push(0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Integral of the polynomial over the standard simplex
    /// `{t ≥ 0, Σ t ≤ 1}` in `nvars` dimensions.
    pub fn integrate_standard_simplex(&self) -> C {
        let n = self.nvars as u32;
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let num = e.iter().fold(num_bigint::BigInt::from(1), |acc, &k| acc * factorial(k));
            let total: u32 = e.iter().sum();
            let w = Rat::new(num, factorial(total + n));
            acc = acc.add(&c.mul_rat(&w));
        }
        acc
    }
}

impl MultiPoly<Rat> {
    pub fn to_cyclo(&self) -> MultiPoly<Cyclo> {
        self.map_coeffs(|c| Cyclo::from_rat(c.clone()))
    }
}

impl MultiPoly<Cyclo> {
    /// Coefficientwise rational projection.
    pub fn to_rational(&self) -> crate::Result<MultiPoly<Rat>> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.to_rational()?);
        }
        Ok(out)
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = |i: usize| {
            if self.nvars <= 3 {
                ["x", "y", "z"][i].to_string()
            } else {
                format!("v{i}")
            }
        };
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names(i) } else { format!("{}^{k}", names(i)) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<C> {
    exp: Exponent,
    coeff: C,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr<C> {
    nvars: usize,
    terms: Vec<TermRepr<C>>,
}

impl<C: Scalar + Serialize> Serialize for MultiPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Scalar + Deserialize<'de>> Deserialize<'de> for MultiPoly<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::<C>::deserialize(d)?;
        if repr.terms.iter().any(|t| t.exp.len() != repr.nvars) {
            return Err(serde::de::Error::custom("exponent length mismatch"));
        }
        Ok(MultiPoly::from_terms(
            repr.nvars,
            repr.terms.into_iter().map(|t| (t.exp, t.coeff)),
        ))
    }
}
