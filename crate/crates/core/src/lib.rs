//! Improper (defective) and clustered graph colouring.
//!
//! The crate is `no_std` with `alloc`. It provides graphs and graph products,
//! a dense symmetric eigensolver, colouring checkers, exact solvers for the
//! improper, clustered, b-fold and fractional chromatic numbers, spectral
//! lower bounds, equality diagnostics for the improper Hoffman bound, and the
//! constructive descent from clustered colourings of `G ⊠ K_t` to `G`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod colouring;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod hoffman;
pub mod linalg;
pub mod solver;
pub mod spectra;
pub mod transfer;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use colouring::{BFoldColouring, Colouring, Mode};
