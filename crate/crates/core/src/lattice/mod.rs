//! Combinatorics of a weight list: bases, cocircuits, rational subspaces and
//! toric vertices.

mod matroid;
mod snf;
mod toric;
mod weights;

pub use matroid::{
    admissible_normals, cocircuits, enumerate_bases, is_unimodular, rational_subspaces,
    RationalSubspace,
};
pub(crate) use matroid::{primitive_canonical, primitive_scaled, subsets as subsets_of};
pub use snf::{smith_normal_form, SmithForm};
pub use toric::{fixed_sublist, toric_vertices, ToricVertex};
pub use weights::{IndexSet, WeightList};
