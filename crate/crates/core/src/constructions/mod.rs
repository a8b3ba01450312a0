//! Constructions that unfold a symmetric graph into a larger one: three-arc
//! graphs, Biggs covers over semidirect products, subgraph graphs, the
//! arc-partition extension of a coset graph, and rebuilding a graph from its
//! quotient, fiber design and a flag orbital.

pub mod extension;
pub mod reconstruction;
pub mod semidirect;
pub mod subgraph;
pub mod three_arc;

pub use extension::{arc_partition_extension, extension_candidates, ArcPartitionExtension};
pub use reconstruction::{
    flag_orbital_reconstruction, reconstruct_from_quotient, regular_normal_subgroup, Flag, ReconstructionCheck,
    ReconstructionData,
};
pub use semidirect::{
    biggs_cover, propagate_chain, validate_nchain, BiggsCover, ChainReport, NChain, SemidirectGroup, SemidirectReport,
};
pub use subgraph::{subgraph_graph, SubgraphGraph};
pub use three_arc::{
    check_condition_pe, check_three_arc_necessity, full_labelling, three_arc_graph, three_arc_orbits, PeLabelling,
    ThreeArc, ThreeArcGraph, ThreeArcOrbit,
};
