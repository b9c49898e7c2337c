//! Exact computation of Lefschetz discriminants.
//!
//! This crate models finite graded-commutative Poincaré duality algebras
//! (cohomology rings of compact complex manifolds), computes the cup-product
//! forms `A_k(eta)` for a generic degree-2 class `eta`, their determinants
//! `delta_k` (the Lefschetz discriminants) and pfaffians, and analyses which
//! rational linear forms on `H^2` divide the discriminants ("L-supported"
//! classes, with type and multiplicity). A small geometry layer checks the
//! dimension and length inequalities that extremal contractions impose on
//! these invariants.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! all linear algebra is fraction-free. There is no floating point anywhere.
//!
//! Module map:
//!
//! * [`exactmath`] — rationals, multivariate polynomials, fraction-free
//!   determinants, pfaffians, rank, linear-factor multiplicity.
//! * [`gca`] — graded-commutative algebras: validation, cup products,
//!   symbolic classes, the ring file format.
//! * [`lefschetz`] — discriminants, point checks, ray support, search.
//! * [`geometry`] — contraction records and inequality checks.
//! * [`catalog`] — verified example rings used by tests and the CLI.

pub mod catalog;
pub mod exactmath;
pub mod gca;
pub mod geometry;
pub mod lefschetz;

pub use exactmath::{LinearForm, MultiPoly, Multiplicity, PolyMatrix, Rational};
pub use gca::{CohomologyRing, Element, SymbolicElement};
pub use lefschetz::{Discriminant, LefschetzMatrix, RayForm};
