use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::geometry::central_chambers;
use crate::lattice::{IndexSet, WeightList};
use crate::linalg::dot_int_rat;

/// Chamber of `{φ : ⟨φ, a⟩ = 0, a ∈ X}` given by a representative `φ`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegularFace {
    phi: Vec<Rat>,
}

impl fmt::Debug for RegularFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.phi.iter().map(Rat::to_string).collect();
        write!(f, "φ=({})", parts.join(","))
    }
}

impl RegularFace {
    pub fn new(phi: Vec<Rat>) -> Self {
        RegularFace { phi }
    }

    pub fn from_ints(phi: &[i64]) -> Self {
        RegularFace {
            phi: phi.iter().map(|&x| Rat::from_int(x)).collect(),
        }
    }

    pub fn phi(&self) -> &[Rat] {
        &self.phi
    }

    pub fn pairing(&self, a: &[i64]) -> Rat {
        dot_int_rat(a, &self.phi)
    }

    /// Checks `⟨φ, a⟩ ≠ 0` on the whole list.
    pub fn check(&self, x: &WeightList) -> Result<()> {
        if self.phi.len() != x.dim() {
            return Err(Error::Invalid("face functional has wrong dimension".into()));
        }
        match (0..x.len()).find(|&i| self.pairing(x.get(i)).is_zero()) {
            Some(i) => Err(Error::NotRegularFace(i)),
            None => Ok(()),
        }
    }

    /// `(A, B)` with `φ > 0` on `A` and `φ < 0` on `B`.
    pub fn split(&self, x: &WeightList) -> Result<(IndexSet, IndexSet)> {
        self.check(x)?;
        let (a, b): (Vec<usize>, Vec<usize>) =
            (0..x.len()).partition(|&i| self.pairing(x.get(i)).is_positive());
        Ok((a, b))
    }

    /// `A ∪ −B` in the original order together with `B`.
    pub fn polarized_list(&self, x: &WeightList) -> Result<(WeightList, IndexSet)> {
        let (_, b) = self.split(x)?;
        Ok((x.polarized(&b), b))
    }
}

/// One representative per chamber, sorted.
pub fn regular_faces(x: &WeightList) -> Vec<RegularFace> {
    central_chambers(x.dim(), x.weights())
        .iter()
        .map(|phi| RegularFace::from_ints(phi))
        .collect()
}
