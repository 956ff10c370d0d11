//! Decide whether a finite permutation group, supplied together with its
//! maximal subgroups, can act point-primitively on a thick finite generalised
//! quadrangle; construct the quadrangle when one exists and analyse its
//! line-orbits.
//!
//! The crate is split along the stages of the search:
//!
//! * [`permgroup`]: permutations, stabilizer chains, coset actions and subdegrees.
//! * [`arith`]: exact arithmetic filters on the point count and the maximal indices.
//! * [`graph`]: candidate collinearity graphs built from suborbit unions.
//! * [`gq`]: quadrangle extraction, axiom checks and line-orbit analysis.
//! * [`pipeline`]: the per-case elimination pipeline.
//! * [`io`]: bundle and report file formats.

pub mod arith;
pub mod gq;
pub mod graph;
pub mod io;
pub mod permgroup;
pub mod pipeline;

pub use num_bigint::BigUint;
