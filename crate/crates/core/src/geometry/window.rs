use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rat;

use super::polyhedron::{Halfspace, Polyhedron};

/// Rational axis-aligned box `[lo_1,hi_1] × … × [lo_s,hi_s]` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WindowRepr", into = "WindowRepr")]
pub struct Window {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowRepr {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
}

impl TryFrom<WindowRepr> for Window {
    type Error = Error;
    fn try_from(r: WindowRepr) -> Result<Window> {
        Window::new(r.lo, r.hi)
    }
}

impl From<Window> for WindowRepr {
    fn from(w: Window) -> WindowRepr {
        WindowRepr { lo: w.lo, hi: w.hi }
    }
}

impl Window {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::Invalid("window bounds have mismatched lengths".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::Invalid("window must have lo < hi in every coordinate".into()));
        }
        Ok(Window { lo, hi })
    }

    pub fn from_ints(lo: &[i64], hi: &[i64]) -> Result<Self> {
        Self::new(
            lo.iter().map(|&x| Rat::from_int(x)).collect(),
            hi.iter().map(|&x| Rat::from_int(x)).collect(),
        )
    }

    /// `[a, b]^dim`.
    pub fn cube(a: i64, b: i64, dim: usize) -> Result<Self> {
        Self::from_ints(&vec![a; dim], &vec![b; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rat] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rat] {
        &self.hi
    }

    pub fn contains_open(&self, v: &[Rat]) -> bool {
        v.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (l, h))| l < x && x < h)
    }

    pub fn contains_closed(&self, v: &[Rat]) -> bool {
        v.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (l, h))| l <= x && x <= h)
    }

    /// `other ⊆ self`.
    pub fn contains_window(&self, other: &Window) -> bool {
        self.contains_closed(&other.lo) && self.contains_closed(&other.hi)
    }

    pub fn volume(&self) -> Rat {
        self.lo
            .iter()
            .zip(&self.hi)
            .fold(Rat::one(), |acc, (l, h)| acc * (h - l))
    }

    pub fn center(&self) -> Vec<Rat> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (l + h) * Rat::new(1, 2))
            .collect()
    }

    pub fn translate(&self, shift: &[i64]) -> Window {
        let s: Vec<Rat> = shift.iter().map(|&x| Rat::from_int(x)).collect();
        self.translate_rat(&s)
    }

    pub fn translate_rat(&self, shift: &[Rat]) -> Window {
        Window {
            lo: self.lo.iter().zip(shift).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(shift).map(|(a, b)| a + b).collect(),
        }
    }

    /// Minkowski sum with the box `[lo, hi]` (each `lo_i ≤ hi_i`).
    pub fn minkowski(&self, lo: &[Rat], hi: &[Rat]) -> Window {
        Window {
            lo: self.lo.iter().zip(lo).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(hi).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn hull(&self, other: &Window) -> Window {
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(b).clone()).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(b).clone()).collect(),
        }
    }

    pub fn intersect(&self, other: &Window) -> Option<Window> {
        let lo: Vec<Rat> = self.lo.iter().zip(&other.lo).map(|(a, b)| a.max(b).clone()).collect();
        let hi: Vec<Rat> = self.hi.iter().zip(&other.hi).map(|(a, b)| a.min(b).clone()).collect();
        Window::new(lo, hi).ok()
    }

    /// Smallest box containing the points, or `None` when degenerate.
    pub fn bounding(points: &[Vec<Rat>]) -> Option<Window> {
        let first = points.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in points {
            for i in 0..p.len() {
                if p[i] < lo[i] {
                    lo[i] = p[i].clone();
                }
                if p[i] > hi[i] {
                    hi[i] = p[i].clone();
                }
            }
        }
        Window::new(lo, hi).ok()
    }

    /// Integer points of the closed box in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let ranges: Vec<(i64, i64)> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (l.ceil_i64(), h.floor_i64()))
            .collect();
        lattice_box(&ranges)
    }

    pub fn to_polyhedron(&self) -> Polyhedron {
        let s = self.dim();
        let mut hs = Vec::with_capacity(2 * s);
        for i in 0..s {
            let mut e = vec![Rat::zero(); s];
            e[i] = Rat::one();
            hs.push(Halfspace::new(e.clone(), self.hi[i].clone()));
            e[i] = -Rat::one();
            hs.push(Halfspace::new(e, -&self.lo[i]));
        }
        Polyhedron::new(s, hs)
    }
}

/// All integer vectors with `lo_i ≤ x_i ≤ hi_i`, lexicographic.
pub fn lattice_box(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    if ranges.iter().any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(cur.clone());
        let mut i = ranges.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                for j in i + 1..ranges.len() {
                    cur[j] = ranges[j].0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let w = Window::cube(-1, 2, 2).unwrap();
        assert_eq!(w.volume(), Rat::from_int(9));
        assert_eq!(w.lattice_points().len(), 16);
        assert!(Window::from_ints(&[1], &[1]).is_err());
        let shifted = w.translate(&[1, 0]);
        assert_eq!(shifted.lo()[0], Rat::zero());
        let back: Window = serde_json::from_str(r#"{"lo":["-1","-1"],"hi":[2,2]}"#).unwrap();
        assert_eq!(back, w);
        assert_eq!(lattice_box(&[(0, 1), (0, 2)]).len(), 6);
    }
}
