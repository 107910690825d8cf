use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::{Error, Result};
use crate::linalg;

/// Element of the cyclotomic field Q(ζ_n), stored as the coefficient vector of
/// a polynomial of degree < φ(n) modulo the cyclotomic polynomial Φ_n.
#[derive(Clone)]
pub struct Cyclo {
    order: u64,
    coeffs: Vec<Rat>,
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // t^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Reduce an arbitrary coefficient vector modulo Φ_n.
fn reduce(mut coeffs: Vec<Rat>, n: u64) -> Vec<Rat> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    if coeffs.len() > deg {
        for i in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    let t = &c * &Rat::from_bigint(pj.clone());
                    coeffs[i - deg + j] -= &t;
                }
            }
        }
    }
    coeffs.resize(deg, Rat::zero());
    coeffs
}

impl Cyclo {
    pub fn from_rat(r: Rat) -> Cyclo {
        Cyclo {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// ζ_n^k.
    pub fn root_power(n: u64, k: i64) -> Cyclo {
        assert!(n >= 1, "cyclotomic order must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rat::zero(); e + 1];
        coeffs[e] = Rat::one();
        Cyclo {
            order: n,
            coeffs: reduce(coeffs, n),
        }
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<Rat>) -> Cyclo {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclo {
            order,
            coeffs: reduce(coeffs, order),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// The same value inside Q(ζ_m).
    pub fn embed(&self, m: u64) -> Result<Cyclo> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::IncompatibleOrder {
                from: self.order,
                to: m,
            });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Ok(Cyclo {
            order: m,
            coeffs: reduce(coeffs, m),
        })
    }

    pub fn to_rational(&self) -> Result<Rat> {
        if self.coeffs.iter().skip(1).all(Rat::is_zero) {
            Ok(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            Err(Error::NotRational(self.clone()))
        }
    }

    fn lift_pair(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        if self.order != other.order {
            let (a, b) = self.lift_pair(other);
            return a.add(&b);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclo {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        if self.order != other.order {
            if other.order == 1 {
                return self.scale(&other.coeffs[0]);
            }
            if self.order == 1 {
                return other.scale(&self.coeffs[0]);
            }
            let (a, b) = self.lift_pair(other);
            return a.mul(&b);
        }
        if self.order <= 2 {
            return Cyclo {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        Cyclo {
            order: self.order,
            coeffs: reduce(prod, self.order),
        }
    }

    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        if d == 1 {
            return Some(Cyclo {
                order: self.order,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // Solve z * w = 1 through the multiplication matrix of z.
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let mut basis = vec![Rat::zero(); d];
            basis[j] = Rat::one();
            let col = self.mul(&Cyclo {
                order: self.order,
                coeffs: basis,
            });
            columns.push(col.coeffs);
        }
        let matrix: Vec<Vec<Rat>> = (0..d)
            .map(|i| (0..d).map(|j| columns[j][i].clone()).collect())
            .collect();
        let mut rhs = vec![Rat::zero(); d];
        rhs[0] = Rat::one();
        let w = linalg::solve_square(&matrix, &rhs)?;
        Some(Cyclo {
            order: self.order,
            coeffs: w,
        })
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut acc = Cyclo {
            order: self.order,
            coeffs: reduce(vec![Rat::one()], self.order),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.lift_pair(other);
            a.coeffs == b.coeffs
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}]{:?}", self.order, self.coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u64,
    coeffs: Vec<Rat>,
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.order,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Cyclo, D::Error> {
        let repr = CycloRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(serde::de::Error::custom("cyclotomic order must be positive"));
        }
        Ok(Cyclo::from_coeffs(repr.order, repr.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |n| cyclotomic_poly(n).iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(p(1), ["-1", "1"]);
        assert_eq!(p(2), ["1", "1"]);
        assert_eq!(p(3), ["1", "1", "1"]);
        assert_eq!(p(4), ["1", "0", "1"]);
        assert_eq!(p(6), ["1", "-1", "1"]);
        for n in 1..40 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(Cyclo::root_power(1, 0), Cyclo::from_rat(r(1)));
        assert_eq!(Cyclo::root_power(2, 1), Cyclo::from_rat(r(-1)));
        let z3 = Cyclo::root_power(3, 1);
        assert_eq!(z3.pow(3), Cyclo::from_rat(r(1)));
    }

    #[test]
    fn to_rational_examples() {
        let one_plus_z2 = Cyclo::from_rat(r(1)).add(&Cyclo::root_power(2, 1));
        assert_eq!(one_plus_z2.to_rational().unwrap(), r(0));
        let s = Cyclo::root_power(3, 1).add(&Cyclo::root_power(3, 2));
        assert_eq!(s.to_rational().unwrap(), r(-1));
        assert!(matches!(
            Cyclo::root_power(3, 1).to_rational(),
            Err(Error::NotRational(_))
        ));
    }

    #[test]
    fn embed_examples() {
        let minus_one = Cyclo::from_coeffs(2, vec![r(-1)]);
        let e = minus_one.embed(4).unwrap();
        assert_eq!(e.order(), 4);
        assert_eq!(e.coeffs(), Cyclo::root_power(4, 2).coeffs());
        assert_eq!(Cyclo::from_rat(r(1)).embed(6).unwrap().to_rational().unwrap(), r(1));
        let z3 = Cyclo::root_power(3, 1).embed(6).unwrap();
        assert_eq!(z3.coeffs(), Cyclo::root_power(6, 2).coeffs());
        assert!(matches!(
            Cyclo::root_power(3, 1).embed(4),
            Err(Error::IncompatibleOrder { from: 3, to: 4 })
        ));
    }

    #[test]
    fn inverse_of_one_minus_root() {
        for n in [3u64, 4, 5, 6, 8, 12] {
            let z = Cyclo::from_rat(r(1)).sub(&Cyclo::root_power(n, 1));
            let w = z.inv().unwrap();
            assert_eq!(z.mul(&w), Cyclo::from_rat(r(1)));
        }
        assert!(Cyclo::from_coeffs(5, vec![]).inv().is_none());
    }

    #[test]
    fn serde_roundtrip() {
        let z = Cyclo::from_coeffs(3, vec![Rat::new(1, 2), r(-2)]);
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"{"order":3,"coeffs":["1/2","-2"]}"#);
        let back: Cyclo = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
    }
}
