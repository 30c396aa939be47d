//! Exact root-system arithmetic for deciding when an irreducible homogeneous
//! vector bundle on a generalized flag variety `G/P_J` is Ulrich.
//!
//! The crate is `no_std` (it needs `alloc`). All arithmetic on roots and
//! weights is carried out in arbitrary-precision rationals; the bounded
//! search in [`search`] lowers the same exact data to scaled integers.
//!
//! Module map:
//!
//! * [`rootspace`]: root systems in explicit ambient coordinates.
//! * [`parabolic`]: node sets `J`, polarizations and `Φ_J^+`.
//! * [`cohomology`]: Borel–Weil–Bott for line-bundle twists.
//! * [`ulrich`]: the `φ` map and the two independent Ulrich decisions.
//! * [`certificates`]: bad pairs that rule out whole families of weights.
//! * [`search`]: bounded exhaustive enumeration of candidate weights.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certificates;
pub mod cohomology;
mod error;
mod linalg;
pub mod parabolic;
pub mod rational;
pub mod rootspace;
pub mod search;
pub mod ulrich;

pub use error::{Error, Result};
pub use parabolic::{NodeSet, ParabolicContext};
pub use rational::Rational;
pub use rootspace::{AmbientVector, Family, LieType, Root, RootSystem, Weight};
