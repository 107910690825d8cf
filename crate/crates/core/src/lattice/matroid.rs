use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::exactnum::Rat;
use crate::linalg::{det, rref, Matrix};

use super::weights::{IndexSet, WeightList};

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn int_det(rows: &[&[i64]]) -> i64 {
    let m: Matrix<Rat> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
        .collect();
    det(&m).to_i64().expect("integer determinant")
}

/// Every basis `σ ⊂ X` with its determinant (rows in index order).
pub fn enumerate_bases(x: &WeightList) -> Vec<(IndexSet, i64)> {
    let s = x.dim();
    subsets(x.len(), s)
        .into_iter()
        .filter_map(|idx| {
            let rows: Vec<&[i64]> = idx.iter().map(|&i| x.get(i)).collect();
            let d = int_det(&rows);
            (d != 0).then_some((idx, d))
        })
        .collect()
}

pub fn is_unimodular(x: &WeightList) -> bool {
    let bases = enumerate_bases(x);
    !bases.is_empty() && bases.iter().all(|(_, d)| d.abs() == 1)
}

/// Divides by the content, keeping direction.
pub(crate) fn primitive_scaled(mut n: Vec<i64>) -> Vec<i64> {
    let g = n.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in n.iter_mut() {
            *x /= g;
        }
    }
    n
}

/// Primitive vector with first nonzero entry positive.
pub(crate) fn primitive_canonical(n: Vec<i64>) -> Vec<i64> {
    let mut n = primitive_scaled(n);
    if let Some(&first) = n.iter().find(|&&x| x != 0) {
        if first < 0 {
            for x in n.iter_mut() {
                *x = -*x;
            }
        }
    }
    n
}

/// Normal of the hyperplane spanned by `s-1` independent vectors, via
/// signed maximal minors.
fn cofactor_normal(rows: &[&[i64]], s: usize) -> Vec<i64> {
    (0..s)
        .map(|j| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| (0..s).filter(|&c| c != j).map(|c| r[c]).collect())
                .collect();
            let refs: Vec<&[i64]> = minor.iter().map(Vec::as_slice).collect();
            let d = if refs.is_empty() { 1 } else { int_det(&refs) };
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Primitive integer normals of the admissible hyperplanes (one per
/// hyperplane, first nonzero entry positive), sorted.
pub fn admissible_normals(x: &WeightList) -> Vec<Vec<i64>> {
    let s = x.dim();
    let mut set = std::collections::BTreeSet::new();
    if s == 1 {
        set.insert(vec![1]);
        return set.into_iter().collect();
    }
    for idx in subsets(x.len(), s - 1) {
        let rows: Vec<&[i64]> = idx.iter().map(|&i| x.get(i)).collect();
        let n = cofactor_normal(&rows, s);
        if n.iter().any(|&v| v != 0) {
            set.insert(primitive_canonical(n));
        }
    }
    set.into_iter().collect()
}

/// Complements `X ∖ H` of the admissible hyperplanes.
pub fn cocircuits(x: &WeightList) -> Result<Vec<IndexSet>> {
    x.require_spanning()?;
    let mut out: Vec<IndexSet> = admissible_normals(x)
        .iter()
        .map(|n| {
            (0..x.len())
                .filter(|&i| crate::linalg::dot_int(n, x.get(i)) != 0)
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSubspace {
    /// Indices of weights forming a basis of the subspace.
    pub basis: IndexSet,
    /// All weights lying in the subspace.
    pub members: IndexSet,
}

impl RationalSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn row_space_key(x: &WeightList, idx: &[usize]) -> (Vec<Vec<Rat>>, IndexSet) {
    let mut m: Matrix<Rat> = idx
        .iter()
        .map(|&i| x.get(i).iter().map(|&v| Rat::from_int(v)).collect())
        .collect();
    if m.is_empty() {
        return (Vec::new(), Vec::new());
    }
    // pivots of the transpose pick a basis among the given weights
    let mut t: Matrix<Rat> = (0..x.dim())
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect();
    let piv = rref(&mut t);
    let basis: IndexSet = piv.iter().map(|&p| idx[p]).collect();
    let r = rref(&mut m).len();
    m.truncate(r);
    (m, basis)
}

/// Every subspace spanned by a sublist of `X`, including `{0}`, ordered by
/// dimension and then by canonical basis.
pub fn rational_subspaces(x: &WeightList) -> Vec<RationalSubspace> {
    let n = x.len();
    let mut found: BTreeMap<(usize, Vec<Vec<Rat>>), IndexSet> = BTreeMap::new();
    found.insert((0, Vec::new()), Vec::new());
    // grow spans by closure: each subspace is spanned by an independent subset
    for k in 1..=x.dim().min(n) {
        for idx in subsets(n, k) {
            if x.rank_of(&idx) != k {
                continue;
            }
            let (key, basis) = row_space_key(x, &idx);
            found.entry((k, key)).or_insert(basis);
        }
    }
    found
        .into_values()
        .map(|basis| {
            let r = basis.len();
            let members = (0..n)
                .filter(|&i| {
                    let mut with = basis.clone();
                    with.push(i);
                    x.rank_of(&with) == r
                })
                .collect();
            RationalSubspace { basis, members }
        })
        .collect()
}
