use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Cyclo, Rat};
use crate::linalg::dot_int_rat;

use super::matroid::enumerate_bases;
use super::snf::smith_normal_form;
use super::weights::{IndexSet, WeightList};

/// Torsion point `q ∈ Q^s / Z^s` with coordinates in `[0, 1)`; it acts on the
/// lattice by `g^λ = ζ_n^{n⟨q,λ⟩}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rat>", into = "Vec<Rat>")]
pub struct ToricVertex {
    coords: Vec<Rat>,
}

impl TryFrom<Vec<Rat>> for ToricVertex {
    type Error = Error;
    fn try_from(v: Vec<Rat>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::Invalid("toric vertex needs coordinates".into()));
        }
        Ok(ToricVertex::new(v))
    }
}

impl From<ToricVertex> for Vec<Rat> {
    fn from(g: ToricVertex) -> Vec<Rat> {
        g.coords
    }
}

impl ToricVertex {
    /// Reduces coordinates mod 1.
    pub fn new(coords: Vec<Rat>) -> Self {
        ToricVertex {
            coords: coords.iter().map(Rat::fract).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        ToricVertex {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// Least common multiple of the coordinate denominators.
    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()))
            .to_u64()
            .expect("vertex order fits in u64")
    }

    pub fn inverse(&self) -> Self {
        ToricVertex::new(self.coords.iter().map(|c| -c).collect())
    }

    /// Exponent `k ∈ [0, n)` with `g^λ = ζ_n^k`.
    pub fn exponent(&self, lambda: &[i64]) -> i64 {
        let n = self.order() as i64;
        let p = dot_int_rat(lambda, &self.coords) * Rat::from_int(n);
        p.to_i64().expect("pairing is integral").rem_euclid(n)
    }

    /// `g^λ` as a root of unity in `Q(ζ_n)`.
    pub fn character(&self, lambda: &[i64]) -> Cyclo {
        let n = self.order();
        if n == 1 {
            return Cyclo::from_rat(Rat::one());
        }
        Cyclo::root_power(n, self.exponent(lambda))
    }

    pub fn fixes(&self, a: &[i64]) -> bool {
        dot_int_rat(a, &self.coords).is_integer()
    }
}

impl fmt::Display for ToricVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(Rat::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for ToricVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Indices of the weights fixed by `g`.
pub fn fixed_sublist(x: &WeightList, g: &ToricVertex) -> IndexSet {
    (0..x.len()).filter(|&i| g.fixes(x.get(i))).collect()
}

/// Solutions of `⟨q, a⟩ ∈ Z` for every `a` in the basis, modulo `Z^s`.
fn basis_torsion(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    let m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let f = smith_normal_form(&m);
    let diag: Vec<i64> = f
        .diagonal()
        .iter()
        .map(|d| d.to_i64().expect("small elementary divisor"))
        .collect();
    let s = diag.len();
    // B q ∈ Z^s  iff  D (V^{-1} q) ∈ Z^s; q = V r with r_i ∈ (1/d_i) Z
    let mut out = Vec::new();
    let mut counter = vec![0i64; s];
    loop {
        let r: Vec<Rat> = counter
            .iter()
            .zip(&diag)
            .map(|(&j, &d)| Rat::new(j, d))
            .collect();
        let q: Vec<Rat> = (0..s)
            .map(|i| {
                (0..s).fold(Rat::zero(), |acc, k| {
                    if f.v[i][k].is_zero() {
                        acc
                    } else {
                        acc + &r[k] * &Rat::from_bigint(f.v[i][k].clone())
                    }
                })
            })
            .collect();
        out.push(q);
        let mut pos = 0;
        loop {
            if pos == s {
                return out;
            }
            counter[pos] += 1;
            if counter[pos] < diag[pos] {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

/// The finite set `V(X)` of torsion points whose fixed sublist spans,
/// sorted with the identity first.
pub fn toric_vertices(x: &WeightList) -> Result<Vec<ToricVertex>> {
    x.require_spanning()?;
    let mut set = BTreeSet::new();
    for (idx, _) in enumerate_bases(x) {
        let rows: Vec<&[i64]> = idx.iter().map(|&i| x.get(i)).collect();
        for q in basis_torsion(&rows) {
            let g = ToricVertex::new(q);
            let fixed = fixed_sublist(x, &g);
            if x.rank_of(&fixed) == x.dim() {
                set.insert(g);
            }
        }
    }
    Ok(set.into_iter().collect())
}
