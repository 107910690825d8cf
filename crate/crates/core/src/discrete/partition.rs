use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::geometry::positive_functional;
use crate::lattice::WeightList;
use crate::linalg::{dot_int, solve_any, Matrix};

use super::face::RegularFace;
use super::function::LatticeFunction;

/// Memoized recursive evaluator of `P_Y` with `Y` spanning a pointed cone.
#[derive(Debug)]
pub struct PartitionFn {
    y: WeightList,
    phi: Vec<i64>,
    /// Number of leading weights that are peeled before the base case.
    peel: usize,
    sign: Rat,
    offset: Vec<i64>,
    memo: Mutex<HashMap<(usize, Vec<i64>), Rat>>,
}

fn is_independent(ws: &[Vec<i64>]) -> bool {
    let rows: Vec<&[i64]> = ws.iter().map(Vec::as_slice).collect();
    crate::linalg::int_rank(&rows) == ws.len()
}

impl PartitionFn {
    fn new(y: &WeightList, sign: Rat, offset: Vec<i64>) -> Result<Self> {
        let phi = positive_functional(y.dim(), y.weights()).ok_or(Error::NotPointed)?;
        let ws = y.weights();
        let peel = (0..=ws.len())
            .find(|&k| is_independent(&ws[k..]))
            .expect("empty tail is independent");
        Ok(PartitionFn {
            y: y.clone(),
            phi,
            peel,
            sign,
            offset,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn dim(&self) -> usize {
        self.y.dim()
    }

    pub fn weights(&self) -> &WeightList {
        &self.y
    }

    pub fn eval(&self, lambda: &[i64]) -> Result<Rat> {
        let mu: Vec<i64> = lambda.iter().zip(&self.offset).map(|(a, b)| a + b).collect();
        Ok(&self.sign * &self.count(0, &mu))
    }

    fn count(&self, depth: usize, lambda: &[i64]) -> Rat {
        let level = dot_int(&self.phi, lambda);
        if level < 0 {
            return Rat::zero();
        }
        if depth == self.peel {
            return self.base(lambda);
        }
        let key = (depth, lambda.to_vec());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let a = self.y.get(depth);
        let step = dot_int(&self.phi, a);
        let mut acc = Rat::zero();
        let mut mu = lambda.to_vec();
        for _ in 0..=level / step {
            acc += &self.count(depth + 1, &mu);
            for (m, x) in mu.iter_mut().zip(a) {
                *m -= x;
            }
        }
        self.memo.lock().unwrap().insert(key, acc.clone());
        acc
    }

    /// 1 iff `λ` is a nonnegative integer combination of the independent tail.
    fn base(&self, lambda: &[i64]) -> Rat {
        let tail = &self.y.weights()[self.peel..];
        if tail.is_empty() {
            return if lambda.iter().all(|&x| x == 0) {
                Rat::one()
            } else {
                Rat::zero()
            };
        }
        let m: Matrix<Rat> = (0..self.dim())
            .map(|r| tail.iter().map(|a| Rat::from_int(a[r])).collect())
            .collect();
        let rhs: Vec<Rat> = lambda.iter().map(|&x| Rat::from_int(x)).collect();
        match solve_any(&m, &rhs, tail.len()) {
            Some(k) if k.iter().all(|c| c.is_integer() && !c.is_negative()) => Rat::one(),
            _ => Rat::zero(),
        }
    }
}

/// `P_Y(λ) = #{k ∈ Z^N_{≥0} : Σ k_i a_i = λ}`.
pub fn partition_function(y: &WeightList) -> Result<LatticeFunction> {
    Ok(LatticeFunction::partition(PartitionFn::new(
        y,
        Rat::one(),
        vec![0; y.dim()],
    )?))
}

/// `P_Y^F(λ) = (−1)^{|B|} P_{A ∪ −B}(λ + a_B)`.
pub fn polarized_partition(y: &WeightList, face: &RegularFace) -> Result<LatticeFunction> {
    let (list, b) = face.polarized_list(y)?;
    let sign = if b.len() % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    };
    Ok(LatticeFunction::partition(PartitionFn::new(
        &list,
        sign,
        y.sum_of(&b),
    )?))
}

/// Direct enumeration of nonnegative integer solutions; test oracle.
pub fn brute_force_partition(y: &WeightList, lambda: &[i64]) -> Result<u64> {
    let phi = positive_functional(y.dim(), y.weights()).ok_or(Error::NotPointed)?;
    let level = dot_int(&phi, lambda);
    if level < 0 {
        return Ok(0);
    }
    fn rec(ws: &[Vec<i64>], phi: &[i64], rest: &mut Vec<i64>, level: i64) -> u64 {
        match ws.split_first() {
            None => rest.iter().all(|&x| x == 0) as u64,
            Some((a, tail)) => {
                let step = dot_int(phi, a);
                let mut total = 0;
                let mut k = 0;
                while k * step <= level {
                    total += rec(tail, phi, rest, level - k * step);
                    for (r, x) in rest.iter_mut().zip(a) {
                        *r -= x;
                    }
                    k += 1;
                }
                for (r, x) in rest.iter_mut().zip(a) {
                    *r += k * x;
                }
                total
            }
        }
    }
    Ok(rec(y.weights(), &phi, &mut lambda.to_vec(), level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Cyclo;

    fn r(n: i64) -> Cyclo {
        Cyclo::from_rat(Rat::from_int(n))
    }

    #[test]
    fn spec_examples() {
        let s2 = WeightList::scalars(&[1, 1]).unwrap();
        assert_eq!(partition_function(&s2).unwrap().eval(&[3]).unwrap(), r(4));
        let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let p = partition_function(&u2).unwrap();
        assert_eq!(p.eval(&[2, 1]).unwrap(), r(2));
        assert_eq!(p.eval(&[0, 0]).unwrap(), r(1));
        assert_eq!(p.eval(&[-1, 3]).unwrap(), r(0));
        let both = WeightList::scalars(&[1, -1]).unwrap();
        assert!(matches!(partition_function(&both), Err(Error::NotPointed)));
    }

    #[test]
    fn polarized_examples() {
        let s1 = WeightList::scalars(&[1]).unwrap();
        let neg = polarized_partition(&s1, &RegularFace::from_ints(&[-1])).unwrap();
        for l in -4..=4 {
            let expect = if l <= -1 { -1 } else { 0 };
            assert_eq!(neg.eval(&[l]).unwrap(), r(expect));
        }
        let m1 = WeightList::scalars(&[-1]).unwrap();
        let pos = polarized_partition(&m1, &RegularFace::from_ints(&[1])).unwrap();
        for l in -4..=4 {
            let expect = if l >= 1 { -1 } else { 0 };
            assert_eq!(pos.eval(&[l]).unwrap(), r(expect));
        }
    }

    #[test]
    fn recursion_matches_enumeration() {
        let n2 =
            WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).unwrap();
        // pointed: φ = (3,1) is positive on every weight
        let p = partition_function(&n2).unwrap();
        for lam in crate::geometry::lattice_box(&[(-2, 5), (-4, 4)]) {
            let b = brute_force_partition(&n2, &lam).unwrap();
            assert_eq!(p.eval_rat(&lam).unwrap(), Rat::from_int(b as i64), "{lam:?}");
        }
    }
}
