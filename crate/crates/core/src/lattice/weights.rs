use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::int_rank;

/// Sorted indices into a [`WeightList`].
pub type IndexSet = Vec<usize>;

/// Ordered multiset of nonzero integer vectors in `Z^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightList {
    dim: usize,
    weights: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightListRepr {
    dim: usize,
    weights: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for WeightList {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WeightListRepr::deserialize(d)?;
        WeightList::new(r.dim, r.weights).map_err(serde::de::Error::custom)
    }
}

impl WeightList {
    pub fn new(dim: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        for (i, w) in weights.iter().enumerate() {
            if w.len() != dim {
                return Err(Error::Invalid(format!(
                    "weight {i} has length {} but dim is {dim}",
                    w.len()
                )));
            }
            if w.iter().all(|&x| x == 0) {
                return Err(Error::Invalid(format!("weight {i} is zero")));
            }
        }
        Ok(WeightList { dim, weights })
    }

    /// One-dimensional list from scalars.
    pub fn scalars(values: &[i64]) -> Result<Self> {
        Self::new(1, values.iter().map(|&v| vec![v]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn all_indices(&self) -> IndexSet {
        (0..self.len()).collect()
    }

    pub fn complement(&self, idx: &[usize]) -> IndexSet {
        (0..self.len()).filter(|i| !idx.contains(i)).collect()
    }

    /// Sublist selected by an index set, order preserved; may be empty.
    pub fn sublist(&self, idx: &[usize]) -> WeightList {
        WeightList {
            dim: self.dim,
            weights: idx.iter().map(|&i| self.weights[i].clone()).collect(),
        }
    }

    pub fn negated(&self) -> WeightList {
        WeightList {
            dim: self.dim,
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// List with the weights at `flip` negated.
    pub fn polarized(&self, flip: &[usize]) -> WeightList {
        let mut out = self.clone();
        for &i in flip {
            for x in out.weights[i].iter_mut() {
                *x = -*x;
            }
        }
        out
    }

    pub fn concat(&self, other: &WeightList) -> WeightList {
        assert_eq!(self.dim, other.dim);
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        WeightList {
            dim: self.dim,
            weights,
        }
    }

    /// `a_I = Σ_{i∈I} a_i`.
    pub fn sum_of(&self, idx: &[usize]) -> Vec<i64> {
        let mut s = vec![0; self.dim];
        for &i in idx {
            for (x, y) in s.iter_mut().zip(&self.weights[i]) {
                *x += y;
            }
        }
        s
    }

    pub fn total(&self) -> Vec<i64> {
        self.sum_of(&self.all_indices())
    }

    pub fn rank_of(&self, idx: &[usize]) -> usize {
        let rows: Vec<&[i64]> = idx.iter().map(|&i| self.weights[i].as_slice()).collect();
        int_rank(&rows)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&self.all_indices())
    }

    pub fn spans(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn require_spanning(&self) -> Result<()> {
        if self.spans() {
            Ok(())
        } else {
            Err(Error::DoesNotSpan)
        }
    }
}
