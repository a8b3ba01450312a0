//! Permutations and fully enumerated permutation groups.

mod group;
mod permutation;

pub use group::{
    enumerate_group, is_transitive, orbit, orbit_under, orbits, permutation_equivalent, permutation_equivalent_inner,
    stabilizer, GroupSpec, GroupTable, PointAction, DEFAULT_ELEMENT_CAP,
};
pub use permutation::{parse_generator_list, Permutation};
