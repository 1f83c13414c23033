//! Canonical invariants for simplicial-walk indistinguishability of graphs.

pub mod atomic;
pub mod automaton;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod invariant;
pub mod linalg;
pub mod mia;
pub mod oracles;
pub mod wl;

pub use error::{Error, Result};
pub use graph::Graph;
