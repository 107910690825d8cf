//! Dense exact linear algebra over any [`Scalar`] field.

use crate::exactnum::{Rat, Scalar};

pub type Matrix<C> = Vec<Vec<C>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<C: Scalar>(m: &mut Matrix<C>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<C: Scalar>(m: &Matrix<C>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace<C: Scalar>(m: &Matrix<C>, cols: usize) -> Vec<Vec<C>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(); cols];
            v[f] = C::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = work[row][f].neg();
            }
            v
        })
        .collect()
}

/// Solve a square nonsingular system; `None` if singular.
pub fn solve_square<C: Scalar>(m: &Matrix<C>, rhs: &[C]) -> Option<Vec<C>> {
    let n = m.len();
    let mut aug: Matrix<C> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Any solution of `m x = rhs` (free variables set to zero), `None` if the
/// system is inconsistent.
pub fn solve_any<C: Scalar>(m: &Matrix<C>, rhs: &[C], cols: usize) -> Option<Vec<C>> {
    let mut aug: Matrix<C> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![C::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}

pub fn det<C: Scalar>(m: &Matrix<C>) -> C {
    let n = m.len();
    let mut a = m.clone();
    let mut d = C::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return C::zero();
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let t = a[c][j].mul(&f);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    d
}

pub fn to_rat_matrix(rows: &[&[i64]]) -> Matrix<Rat> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
        .collect()
}

/// Rank of a list of integer vectors.
pub fn int_rank(vectors: &[&[i64]]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&to_rat_matrix(vectors))
}

pub fn dot_int_rat(a: &[i64], v: &[Rat]) -> Rat {
    a.iter()
        .zip(v)
        .fold(Rat::zero(), |acc, (&x, y)| acc + &(y * &Rat::from_int(x)))
}

pub fn dot_rat(a: &[Rat], v: &[Rat]) -> Rat {
    a.iter().zip(v).fold(Rat::zero(), |acc, (x, y)| acc + &(x * y))
}

pub fn dot_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
