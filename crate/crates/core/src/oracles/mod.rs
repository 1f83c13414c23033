//! Brute-force reference implementations used to cross-check the automaton
//! pipeline. None of these are used by the invariant itself.

mod census;
mod decomposition;
mod equivalence;
mod hom;
mod swref;
mod words;

pub use census::{hasse_walk_totals, walk_census};
pub use decomposition::{
    decomposing_walk_search, path_decomposition_to_walk, pathwidth, validate_decomposing_walk,
    validate_path_decomposition, walk_to_path_decomposition, PathDecomposition, SimplicialWalk,
};
pub use equivalence::{brute_equivalent, series_agree_up_to};
pub use hom::hom_count;
pub use swref::sw_refinement;
pub use words::{ColorWord, WordCounts};

/// Default bound on intermediate table sizes for the enumerating oracles.
pub const DEFAULT_CAP: u64 = 20_000_000;
