//! Exact certification toolkit for the spectral proof that the largest
//! `k`-intersecting families of permutations in `S_n` are the `k`-cosets.
//!
//! Everything is computed in exact integer or rational arithmetic at concrete
//! small-to-moderate `n`: character tables of `S_n`, spectra of
//! conjugacy-class Cayley graphs, the weighted pseudo-adjacency combination
//! `Y`, Hoffman-type bounds, the span of `k`-cosets, the generalized Birkhoff
//! decomposition and brute-force ground truth for tiny `n`.

// Index loops mirror the matrix notation of the algorithms.
#![allow(clippy::needless_range_loop)]

pub mod assignment;
pub mod birkhoff;
pub mod characters;
pub mod engine;
pub mod error;
pub mod extremal;
pub mod field;
pub mod group_algebra;
pub mod linalg;
pub mod lp;
pub mod partitions;
pub mod perm;
pub mod rational;
pub mod spectrum;

pub use error::{Error, Result};
pub use partitions::{Partition, PartitionClass};
pub use perm::Perm;
pub use rational::Rational;
