use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry nonnegative and dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

// row_i <- a*row_i + b*row_j, row_j <- c*row_i + d*row_j  (ad - bc = ±1)
fn mix_rows(m: &mut [Vec<BigInt>], i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    for k in 0..m[i].len() {
        let x = m[i][k].clone();
        let y = m[j][k].clone();
        m[i][k] = a * &x + b * &y;
        m[j][k] = c * &x + d * &y;
    }
}

fn mix_cols(m: &mut [Vec<BigInt>], i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    for row in m.iter_mut() {
        let x = row[i].clone();
        let y = row[j].clone();
        row[i] = a * &x + b * &y;
        row[j] = c * &x + d * &y;
    }
}

/// Coefficients `(x, y, q/g, p/g)` with `x p + y q = g`; plain division
/// when `p | q` so the pivot row is kept.
fn bezout(p: &BigInt, q: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if (q % p).is_zero() {
        return (BigInt::one(), BigInt::zero(), q / p, BigInt::one());
    }
    let e = p.extended_gcd(q);
    (e.x, e.y, q / &e.gcd, p / &e.gcd)
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let (x, y, qg, pg) = bezout(&d[t][t], &d[i][t]);
                mix_rows(&mut d, t, i, &x, &y, &(-&qg), &pg);
                mix_rows(&mut u, t, i, &x, &y, &(-&qg), &pg);
                changed = true;
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let (x, y, qg, pg) = bezout(&d[t][t], &d[t][j]);
                mix_cols(&mut d, t, j, &x, &y, &(-&qg), &pg);
                mix_cols(&mut v, t, j, &x, &y, &(-&qg), &pg);
                changed = true;
            }
            if !changed {
                // enforce divisibility of the remaining block
                let mut bad = None;
                'search: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&d[i][j] % &d[t][t]).is_zero() {
                            bad = Some(i);
                            break 'search;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        // row_t += row_i
                        mix_rows(&mut d, t, i, &one, &one, &zero, &one);
                        mix_rows(&mut u, t, i, &one, &one, &zero, &one);
                    }
                    None => break,
                }
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    SmithForm { u, d, v }
}
