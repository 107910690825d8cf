use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::geometry::{positive_functional, Arrangement};
use crate::lattice::{enumerate_bases, WeightList};
use crate::linalg::{dot_int, dot_int_rat, solve_square, Matrix};
use crate::poly::MultiPoly;

/// `scale · T_Y` for a list `Y` spanning a pointed cone; polynomial on each
/// tope, computed lazily.
#[derive(Debug)]
pub struct ConeSpline {
    dim: usize,
    rays: WeightList,
    seed: Vec<Vec<i64>>,
    seed_det: i64,
    rest: Vec<Vec<i64>>,
    /// `levels[k]`: arrangement of `seed ∪ rest[..k]`.
    levels: Vec<Arrangement>,
    scale: Rat,
    memo: Mutex<HashMap<(usize, Vec<i8>), MultiPoly<Rat>>>,
}

impl ConeSpline {
    pub fn new(rays: &WeightList, scale: Rat) -> Result<Self> {
        rays.require_spanning()?;
        if positive_functional(rays.dim(), rays.weights()).is_none() {
            return Err(Error::NotPointed);
        }
        let (basis, det) = enumerate_bases(rays)
            .into_iter()
            .next()
            .expect("spanning list has a basis");
        let seed: Vec<Vec<i64>> = basis.iter().map(|&i| rays.get(i).to_vec()).collect();
        let rest: Vec<Vec<i64>> = rays
            .complement(&basis)
            .iter()
            .map(|&i| rays.get(i).to_vec())
            .collect();
        let mut levels = Vec::new();
        for k in 0..=rest.len() {
            let mut ws = seed.clone();
            ws.extend(rest[..k].iter().cloned());
            let wl = WeightList::new(rays.dim(), ws).expect("nonzero weights");
            levels.push(Arrangement::of(&wl));
        }
        Ok(ConeSpline {
            dim: rays.dim(),
            rays: rays.clone(),
            seed,
            seed_det: det.abs(),
            rest,
            levels,
            scale,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn rays(&self) -> &WeightList {
        &self.rays
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// Central arrangement on whose topes the function is polynomial.
    pub fn arrangement(&self) -> &Arrangement {
        self.levels.last().unwrap()
    }

    /// Polynomial of the function on the tope containing `v`.
    pub fn poly_at(&self, v: &[Rat]) -> Result<MultiPoly<Rat>> {
        Ok(self.level_poly(self.rest.len(), v)?.scale(&self.scale))
    }

    pub fn eval(&self, v: &[Rat]) -> Result<Rat> {
        Ok(self.poly_at(v)?.eval(v))
    }

    /// Sign vector of `v` for the given level, identifying its tope.
    pub fn tope(&self, v: &[Rat]) -> Result<Vec<i8>> {
        self.signs(self.rest.len(), v)
    }

    fn signs(&self, level: usize, v: &[Rat]) -> Result<Vec<i8>> {
        self.levels[level]
            .normals()
            .iter()
            .map(|n| match dot_int_rat(n, v).signum() {
                0 => Err(Error::IrregularPoint),
                s => Ok(s as i8),
            })
            .collect()
    }

    fn level_poly(&self, level: usize, v: &[Rat]) -> Result<MultiPoly<Rat>> {
        let key = (level, self.signs(level, v)?);
        if let Some(p) = self.memo.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = if level == 0 {
            self.seed_poly(v)
        } else {
            self.absorb(level, v)?
        };
        self.memo.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    fn seed_poly(&self, v: &[Rat]) -> MultiPoly<Rat> {
        let m: Matrix<Rat> = (0..self.dim)
            .map(|r| self.seed.iter().map(|a| Rat::from_int(a[r])).collect())
            .collect();
        let c = solve_square(&m, v).expect("seed is a basis");
        if c.iter().all(Rat::is_positive) {
            MultiPoly::constant(Rat::new(1, self.seed_det), self.dim)
        } else {
            MultiPoly::zero(self.dim)
        }
    }

    /// `∫_0^∞ T_prev(v − t a) dt` as a polynomial in `v` on the tope of `v`.
    fn absorb(&self, level: usize, v: &[Rat]) -> Result<MultiPoly<Rat>> {
        let s = self.dim;
        let a = &self.rest[level - 1];
        let prev = level - 1;
        // breakpoints t_j(v) = ⟨n_j, v⟩ / ⟨n_j, a⟩ along the ray
        let mut breaks: Vec<(Rat, Vec<i64>, i64)> = Vec::new();
        for n in self.levels[prev].normals() {
            let na = dot_int(n, a);
            if na == 0 {
                continue;
            }
            let t = dot_int_rat(n, v) / Rat::from_int(na);
            if t.is_positive() {
                breaks.push((t, n.clone(), na));
            }
        }
        breaks.sort_by(|x, y| x.0.cmp(&y.0));
        if breaks.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::IrregularPoint);
        }
        let along = |t: &Rat| -> Vec<Rat> {
            v.iter()
                .zip(a)
                .map(|(x, &ai)| x - &(t * &Rat::from_int(ai)))
                .collect()
        };
        // the function vanishes beyond the last breakpoint
        let tail = breaks.last().map_or(Rat::one(), |b| &b.0 + &Rat::one());
        if !self.level_poly(prev, &along(&tail))?.is_zero() {
            return Err(Error::NotPointed);
        }
        let bound = |b: Option<&(Rat, Vec<i64>, i64)>| -> MultiPoly<Rat> {
            match b {
                None => MultiPoly::zero(s),
                Some((_, n, na)) => {
                    let lin: Vec<Rat> = n.iter().map(|&x| Rat::new(x, *na)).collect();
                    MultiPoly::affine(&lin, Rat::zero())
                }
            }
        };
        // substitution v_i -> v_i - t a_i in s+1 variables, t last
        let shift: Vec<MultiPoly<Rat>> = (0..s)
            .map(|i| {
                let mut lin = vec![Rat::zero(); s + 1];
                lin[i] = Rat::one();
                lin[s] = Rat::from_int(-a[i]);
                MultiPoly::affine(&lin, Rat::zero())
            })
            .collect();
        let mut out = MultiPoly::zero(s);
        let mut lo_t = Rat::zero();
        let mut lo: Option<&(Rat, Vec<i64>, i64)> = None;
        for b in &breaks {
            let mid = (&lo_t + &b.0) * Rat::new(1, 2);
            let q = self.level_poly(prev, &along(&mid))?;
            if !q.is_zero() {
                let anti = q.compose(&shift).integrate_var(s);
                let at = |bd: MultiPoly<Rat>| {
                    let mut subs: Vec<MultiPoly<Rat>> =
                        (0..s).map(|i| MultiPoly::var(i, s)).collect();
                    subs.push(bd);
                    anti.compose(&subs)
                };
                let upper = at(bound(Some(b)));
                let lower = at(bound(lo));
                out.add_assign(&upper.sub(&lower));
            }
            lo_t = b.0.clone();
            lo = Some(b);
        }
        Ok(out)
    }
}
