//! Clique-inserted lattices: the transform that replaces every vertex
//! of an r-regular graph by an r-clique, and the quantities it carries
//! along — spectra and graph energy, resistance distance and Kirchhoff
//! index, exact spanning-tree and dimer counts with their bulk
//! entropies, and explicit expander families with spectral-gap tracking
//! under iteration.
//!
//! Start from the runnable examples (`cargo run --example <name>`) or
//! the `clat` binary; each module documents its own contracts.

pub mod asymptotics;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod io;
pub mod kirchhoff;
pub mod lattice;
pub mod ramanujan;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::Graph;
