//! Turaev-Viro state sums at a real parameter `0 < t < 1`.
//!
//! * [`qalgebra`]: quantum integers, theta, Tet, unitary 6j symbols, their
//!   universal bound and large-color limits, plus an exact rational oracle.
//! * [`spine`]: ideal triangulations, edge classes and dual spines.
//! * [`surfaces`]: admissible colorings (spinal surfaces) and their invariants.
//! * [`statesum`]: contributions, renormalized partial sums and limits.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod qalgebra;
pub mod real;
pub mod spine;
pub mod statesum;
pub mod surfaces;

pub use real::Real;
