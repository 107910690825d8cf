//! Exact scalars: rationals and cyclotomic numbers.

mod cyclo;
mod rat;
mod scalar;

pub use cyclo::{cyclotomic_poly, euler_phi, Cyclo};
pub use rat::{factorial, ParseRatError, Rat};
pub use scalar::Scalar;
