//! The arithmetic of pencils: the minimal lattices `P_{p,q}` spanned by a
//! pencil with `p` 3-fibers and `q` 1-fibers, their distinguished
//! discriminant classes and finite index extensions, section coordinates in
//! `(Z3)^p x (Z2)^q`, and the section-adding enumeration drivers.

pub mod coords;
pub mod lattice;
pub mod sixzero;
pub mod state;
pub mod survey;

pub use coords::{CoordinateStats, CoordinateVector};
pub use lattice::{
    admissible_pencil_types, build_pencil_lattice, geometric_pivots, GeometricPivot,
    PencilLattice, PencilPivot, TypeVerdict,
};
