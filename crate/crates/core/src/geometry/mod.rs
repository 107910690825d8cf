//! Rational polyhedra, zonotopes, alcove complexes and an independent
//! fiber-volume oracle for spline values.

mod alcove;
mod grid;
mod oracle;
mod polyhedron;
mod window;
mod zonotope;

pub use alcove::{
    alcoves, alcoves_at_origin, base_alcove, base_alcove_in, central_chambers, AlcoveComplex,
    AlcoveRegion, Arrangement, Cell,
};
pub use grid::{grid_points, sample_csv};
pub use oracle::{positive_functional, spline_point_oracle, SplineKind};
pub use polyhedron::{
    affine_rank, integrate_simplex, simplex_volume, triangulate, Halfspace, Polyhedron,
};
pub use window::{lattice_box, Window};
pub use zonotope::{delta_set, delta_set_at, in_cone, zonotope, zonotope_bbox, zonotope_window};

pub fn polytope_volume(p: &Polyhedron) -> crate::Result<crate::Rat> {
    p.volume()
}
