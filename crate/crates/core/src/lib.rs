//! Symmetric graphs from finite permutation groups.
//!
//! Groups are held as fully enumerated permutation tables ([`perm::GroupTable`]).
//! On top of them the crate builds coset graphs, orbital graphs, quotients by
//! block systems, flag-transitive designs, and the unfolding constructions
//! (three-arc graphs, Biggs covers, subgraph graphs, arc-partition extensions
//! and flag-orbital reconstruction). Every construction comes with a checker
//! that certifies the structural claims made about it.
//!
//! All actions are right actions: `x^(gh) = (x^g)^h`.

pub mod constructions;
pub mod coset_graphs;
pub mod designs;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod graph;
pub mod perm;
pub mod quotients;
pub mod subgroups;

pub use error::{Error, Result};
pub use graph::{are_isomorphic, verify_action, DirectedSubgraph, Graph, TransitivityReport};
pub use perm::{GroupSpec, GroupTable, Permutation};
pub use subgroups::{BlockSystem, Subgroup};
