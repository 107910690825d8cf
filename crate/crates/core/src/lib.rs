//! Exact calculus for box splines, multivariate splines, vector partition
//! functions and Dahmen–Micchelli spaces, together with the Todd-operator
//! deconvolution formulas that recover lattice functions from splines.
//!
//! Everything is computed with exact rational and cyclotomic arithmetic; no
//! identity in this crate is checked up to a floating tolerance.

pub mod discrete;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod inversion;
pub mod lattice;
pub mod linalg;
pub mod piecewise;
pub mod poly;

pub use error::{Error, Result};
pub use exactnum::{Cyclo, Rat, Scalar};
pub use lattice::{ToricVertex, WeightList};
