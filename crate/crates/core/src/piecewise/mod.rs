//! Piecewise polynomial splines on alcove complexes, operator series and
//! the semi-discrete convolution.

mod build;
mod cone;
mod pw;
mod series;

pub use build::{
    box_spline_sum, build_box, build_spline, build_t_polarized, polarized_cone, spline_sum,
    PartKind, SplineSum,
};
pub use cone::ConeSpline;
pub use pw::{lim_alcove, semidiscrete_convolve, PiecewisePoly};
pub use series::{cube_coefficients, todd_coefficients, Factor, OperatorSeries};
