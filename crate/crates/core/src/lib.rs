//! Exact-arithmetic toolkit for line configurations on nonsingular quartic
//! surfaces.
//!
//! Everything here is exact: integers are arbitrary precision, rationals are
//! reduced fractions, and number-field elements are coordinate vectors over a
//! fixed power basis. No floating point is used anywhere, so enumeration
//! results (short vectors, line counts, embedding verdicts) are proofs, not
//! approximations.
//!
//! The main layers, bottom up:
//!
//! * [`mat`] — integer matrices, Smith normal form, exact determinants,
//!   saturated kernels, exact signatures.
//! * [`nf`] — arithmetic in the fixed number fields `Q`, `Q(√d)`, `Q(ζ8)`,
//!   `Q(ζ12)`.
//! * [`lattice`], [`discform`], [`nikulin`] — even lattices, their
//!   discriminant quadratic forms, finite index extensions, and the
//!   primitive-embedding criterion into the even unimodular lattice of
//!   signature (3, 19).
//! * [`shortvec`] — provably complete enumeration of vectors of a fixed norm
//!   in negative definite lattices (plain, coset, and congruence queries).
//! * [`config`] — polarized lattices with their line sets: validity, planes,
//!   pencils, combinatorial invariants, Dynkin/affine-Dynkin machinery.
//! * [`pencil`] — the arithmetic of pencils: the lattices `P_{p,q}`, section
//!   coordinates, admissibility, pivots, and the section-adding survey
//!   drivers.
//! * [`quartics`] — explicit quartic surfaces and their lines over number
//!   fields: construction, incidence, symmetry, and certification.

pub mod config;
pub mod discform;
pub mod lattice;
pub mod mat;
pub mod nf;
pub mod nikulin;
pub mod pencil;
pub mod quartics;
pub mod shortvec;

pub use mat::{IntMatrix, Rational, SmithData};
