use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::lattice::{admissible_normals, smith_normal_form, WeightList};
use crate::linalg::dot_int_rat;

use super::alcove::central_chambers;
use super::polyhedron::{Halfspace, Polyhedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplineKind {
    Box,
    Cone,
}

/// Some integer functional positive on every vector, if the cone is pointed.
pub fn positive_functional(dim: usize, vectors: &[Vec<i64>]) -> Option<Vec<i64>> {
    if vectors.is_empty() {
        return Some(vec![1; dim]);
    }
    central_chambers(dim, vectors)
        .into_iter()
        .find(|phi| vectors.iter().all(|a| crate::linalg::dot_int(phi, a) > 0))
}

/// Value of `B_X` or `T_X` at `v`, computed as the normalized volume of the
/// fiber `{t : Σ t_i a_i = v}` in the cube or the orthant.
pub fn spline_point_oracle(x: &WeightList, kind: SplineKind, v: &[Rat]) -> Result<Rat> {
    x.require_spanning()?;
    let s = x.dim();
    let n = x.len();
    for nrm in admissible_normals(x) {
        let d = dot_int_rat(&nrm, v);
        let bad = match kind {
            SplineKind::Box => d.is_integer(),
            SplineKind::Cone => d.is_zero(),
        };
        if bad {
            return Err(Error::IrregularPoint);
        }
    }
    if kind == SplineKind::Cone && positive_functional(s, x.weights()).is_none() {
        return Err(Error::NotPointed);
    }
    // A is s × N with the weights as columns
    let a: Vec<Vec<BigInt>> = (0..s)
        .map(|r| (0..n).map(|c| BigInt::from(x.get(c)[r])).collect())
        .collect();
    let f = smith_normal_form(&a);
    let diag = f.diagonal();
    let index = diag.iter().fold(BigInt::from(1), |acc, d| acc * d);
    // particular solution t0 = V (D^+ U v)
    let uv: Vec<Rat> = f
        .u
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (c, x)| acc + Rat::from_bigint(c.clone()) * x)
        })
        .collect();
    let mut y = vec![Rat::zero(); n];
    for i in 0..s {
        y[i] = &uv[i] / &Rat::from_bigint(diag[i].clone());
    }
    let vmat: Vec<Vec<Rat>> = f
        .v
        .iter()
        .map(|row| row.iter().map(|c| Rat::from_bigint(c.clone())).collect())
        .collect();
    let t0: Vec<Rat> = (0..n)
        .map(|i| (0..n).fold(Rat::zero(), |acc, k| acc + &vmat[i][k] * &y[k]))
        .collect();
    let k = n - s;
    let norm = Rat::from_bigint(index).recip();
    let base: Vec<Halfspace> = (0..n)
        .flat_map(|i| {
            // t_i = t0_i + Σ_j V[i][s+j] u_j
            let row: Vec<Rat> = (0..k).map(|j| vmat[i][s + j].clone()).collect();
            let neg: Vec<Rat> = row.iter().map(|x| -x).collect();
            let mut out = vec![Halfspace::new(neg, t0[i].clone())];
            if kind == SplineKind::Box {
                out.push(Halfspace::new(row, Rat::one() - &t0[i]));
            }
            out
        })
        .collect();
    if k == 0 {
        let inside = base.iter().all(|h| h.offset.is_positive());
        return Ok(if inside { norm } else { Rat::zero() });
    }
    Ok(Polyhedron::new(k, base).volume()? * norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    #[test]
    fn oracle_examples() {
        let s2 = WeightList::scalars(&[1, 1]).unwrap();
        assert_eq!(spline_point_oracle(&s2, SplineKind::Box, &[r(1, 2)]).unwrap(), r(1, 2));
        let s1 = WeightList::scalars(&[1]).unwrap();
        assert_eq!(spline_point_oracle(&s1, SplineKind::Cone, &[r(5, 1)]).unwrap(), r(1, 1));
        let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            spline_point_oracle(&u2, SplineKind::Cone, &[r(2, 1), r(1, 1)]).unwrap(),
            r(1, 1)
        );
        assert!(matches!(
            spline_point_oracle(&s2, SplineKind::Box, &[r(1, 1)]),
            Err(Error::IrregularPoint)
        ));
        let both = WeightList::scalars(&[1, -1]).unwrap();
        assert!(matches!(
            spline_point_oracle(&both, SplineKind::Cone, &[r(1, 2)]),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn basis_normalization() {
        // T_σ = 1/|det σ| inside cone(σ)
        let two = WeightList::scalars(&[2]).unwrap();
        assert_eq!(spline_point_oracle(&two, SplineKind::Cone, &[r(3, 1)]).unwrap(), r(1, 2));
        assert_eq!(spline_point_oracle(&two, SplineKind::Box, &[r(3, 2)]).unwrap(), r(1, 2));
        let sig = WeightList::new(2, vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(
            spline_point_oracle(&sig, SplineKind::Cone, &[r(3, 1), r(1, 3)]).unwrap(),
            r(1, 2)
        );
    }
}
