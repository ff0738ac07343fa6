//! Finite truncations ("balls") of the infinite connected-homogeneous and
//! highly arc-transitive digraph families, together with exact or
//! witness-producing checks of their structural properties.

pub mod ball;
pub mod bipartite;
pub mod census;
pub mod digraph;
mod dsu;
pub mod error;
pub mod families;
pub mod iso;
pub mod manifest;
pub mod reachability;
pub mod report;
pub mod serial;
pub mod spec;
pub mod structure;
pub mod subsets;
pub mod symmetry;

pub use ball::{ball, FiniteBall, LabeledBall, LabeledMixedBall};
pub use bipartite::{is_edge_transitive, make_bipartite, BipartiteGraph, BipartiteKind};
pub use digraph::{Digraph, MixedGraph};
pub use error::{Error, Result};
pub use iso::{
    are_isomorphic, automorphisms, extend_isomorphism, extend_isomorphism_within, find_isomorphisms,
    IsoMap,
};
pub use subsets::enumerate_connected_subdigraphs;
pub use reachability::{
    arc_classes, classify_bipartite_shape, intersection_digraph, match_relation, reachability_digraph,
    ArcClassPartition, FamilyTag, IntersectionDigraph, MatchRelation, ReachabilityReport,
};
pub use report::{CheckReport, Verdict, Witness};
pub use symmetry::{
    check_bipartite_c_homogeneity, check_c_homogeneity, check_c_homogeneity_with, check_homogeneous_bipartite,
    check_k_arc_transitivity, check_k_arc_transitivity_with, CHomogeneityOptions, RootMode,
};
pub use structure::{
    ancestors, check_property_z, descendants, ends_probe, has_directed_cycle, is_anc_tree, is_desc_tree,
    level_assignment, path_length_uniformity, path_length_uniformity_all, triangle_profile, LevelFunction,
    Reach, SignedWalk, TriangleProfile,
};
pub use census::{
    canonical_code, census_c_homogeneous, enumerate_connected_bipartite, classified_members, CanonicalCode,
    CensusEntry, CensusResult,
};
pub use manifest::{FamilyDefaults, Manifest};
pub use serial::SerializedBall;
pub use spec::{DlBase, FamilySpec, YExtent};
