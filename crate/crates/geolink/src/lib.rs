//! Exact-arithmetic linking invariants of periodic orbits of geodesic
//! flows on surfaces and 2-orbifolds.
//!
//! Three calculi, one per family of base spaces:
//!
//! * [`torus`] — collections of periodic orbits over a flat torus, encoded
//!   as convex lattice polygons: genus, Euler characteristic, linking
//!   numbers, and Birkhoff-section existence, all by lattice-point
//!   counting and exact areas.
//! * [`hecke`] — periodic geodesics on hyperbolic orbifolds with cone
//!   points of orders `p`, `q` and a cusp, encoded as cyclic syllable
//!   words: wheel turn, linking with the cusp fiber (by two independent
//!   routes), lens-space data, and the `p = 2` pairwise linking bound.
//! * [`genus`] — template orbit collections on genus-`g` surfaces built
//!   from regular `4g+2`-gons: quadratic-form linking bounds in reduced
//!   codes, cone generators, and an exhaustive verifier that the bound
//!   form is negative on the symmetric cone.
//!
//! All arithmetic is exact: big rationals, integer lattice geometry, no
//! floating point anywhere. Every value is deterministic, including the
//! parallel cone sweep (enabled by the default `parallel` feature; build
//! with `--no-default-features` for the sequential fallback).

pub mod error;
pub mod exact;
pub mod genus;
pub mod hecke;
pub mod torus;

pub use error::{Error, Result};
pub use exact::{FormMatrix, LatticeVector, Rational};
