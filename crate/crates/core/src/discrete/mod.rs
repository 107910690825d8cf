//! Lattice functions: finite tables, partition functions, twisted difference
//! operators and the Dahmen–Micchelli spaces.

mod dm;
mod face;
mod function;
mod partition;

pub use dm::{
    certifying_grid, d_space_basis, dm_interpolate, dm_space_basis, interpolation_is_regular,
    is_annihilated, DMElement,
};
pub use face::{regular_faces, RegularFace};
pub use function::{table_rows, LatticeFunction, Point, TableRow};
pub use partition::{brute_force_partition, partition_function, polarized_partition};
