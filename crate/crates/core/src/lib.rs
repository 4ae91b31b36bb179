//! Exact-arithmetic toolkit for the wall-and-chamber geometry of Bridgeland
//! stability conditions on a minimal surface of general type, centred on the
//! shifted tangent object of the surface.
//!
//! Everything in this crate is computed over the rationals with arbitrary
//! precision: there are no floating-point numbers anywhere in the predicates,
//! so equality of wall invariants, tangency of circles, and membership of a
//! point in a region are all decided exactly.
//!
//! The crate is organised as a small stack of modules, each usable on its own:
//!
//! * [`ratio`] — `BigInt`/`BigRational` aliases, parsing and printing of
//!   rationals in `num/den` form, exact integer square roots, and JSON helpers.
//! * [`surface`] — numerical invariants of a surface from the pair
//!   `(c2, K2)` of Chern numbers, together with the geography checks that
//!   decide whether such a pair can belong to a minimal surface of general
//!   type, and a scanner over all small admissible pairs.
//! * [`lattice`] — the Néron–Severi intersection lattice as an explicit
//!   integer Gram matrix: signature verification, positive-cone membership,
//!   the Hodge index inequality, and exact enumeration of divisor classes of
//!   bounded degree and positive square.
//! * [`charge`] — central charges of the stability conditions parameterised
//!   by the upper half plane, exact phase comparison, twisted slopes, and the
//!   Bogomolov/Miyaoka discriminant inequalities used to rule out
//!   destabilising sheaves.
//! * [`walls`] — the locus where two charge vectors align: semicircular and
//!   vertical walls, the circle attached to the shifted tangent object, the
//!   hyperbola carrying every wall top, exact pairwise classification of
//!   walls, and the region below that circle cut out by slope bounds.
//! * [`enumerate`] — exhaustive enumeration of the Chern characters whose
//!   walls cross a given vertical segment, and the inequality sieve applied
//!   to quotient candidates in a Harder–Narasimhan filtration, plus the
//!   fibration-style consequences available when the surface sits close to
//!   the boundary of its allowed region.
//!
//! Integer pairs such as `(c2, K2) = (13, 35)` thread through the test suite
//! as worked examples; the library itself accepts any input in the documented
//! domains and reports violations through typed errors rather than panics.

pub mod budget;
pub mod charge;
pub mod enumerate;
pub mod lattice;
pub mod ratio;
pub mod surface;
pub mod walls;

pub use ratio::{Int, Rat};
