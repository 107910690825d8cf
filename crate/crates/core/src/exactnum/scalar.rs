use std::fmt;

use super::{Cyclo, Rat};

/// Exact field operations shared by the rational and cyclotomic kernels.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Conversion from a cyclotomic number; fails for `Rat` on irrational input.
    fn try_from_cyclo(c: &Cyclo) -> crate::Result<Self>;
    fn to_cyclo(&self) -> Cyclo;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_int(n))
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|inv| self.mul(&inv))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Rat::is_zero(self)).then(|| self.recip())
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        self * r
    }
    fn try_from_cyclo(c: &Cyclo) -> crate::Result<Self> {
        c.to_rational()
    }
    fn to_cyclo(&self) -> Cyclo {
        Cyclo::from_rat(self.clone())
    }
}

impl Scalar for Cyclo {
    fn zero() -> Self {
        Cyclo::from_rat(Rat::zero())
    }
    fn one() -> Self {
        Cyclo::from_rat(Rat::one())
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        Cyclo::from_rat(r.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        Cyclo::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Cyclo::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Cyclo::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Cyclo::inv(self)
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn try_from_cyclo(c: &Cyclo) -> crate::Result<Self> {
        Ok(c.clone())
    }
    fn to_cyclo(&self) -> Cyclo {
        self.clone()
    }
}
