//! Toolkit for inverse zero-sum problems over `Z_n` and the dihedral groups `D_2n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`zn`]: residues, the bar map and multiset sequences over `Z_n`.
//! * [`subsum`]: subsequence-sum sets (modular and integer), witnesses and the
//!   interval theorem verifier.
//! * [`normalizer`]: the unit-multiplier search and the multiplicity lower bounds.
//! * [`group`] and [`products`]: finite groups given by Cayley tables and the
//!   sub-multiset product DP used for product-one freeness.
//! * [`dihedral`]: normal-form arithmetic in `D_2n` and the extremal classification.
//! * [`davenport`]: small Davenport constants by pruned exhaustive search.
//! * [`sweep`]: the exhaustive verification suites with deterministic parallelism.

pub mod bitset;
pub mod davenport;
pub mod dihedral;
pub mod enumerate;
mod error;
pub mod group;
pub mod normalizer;
pub mod products;
pub mod subsum;
pub mod sweep;
pub mod zn;

pub use error::{Error, Result};
