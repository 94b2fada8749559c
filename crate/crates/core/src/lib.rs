//! Structure trees of graphs from tree sets of tight cuts.
//!
//! The crate works on finite truncations of infinite graphs: a vertex set with
//! a *frontier*, the vertices where the truncation cut the graph off. Cuts,
//! tree sets, cut trees, the structure mapping and the end and
//! quasi-isometry diagnostics are all computed on such truncations.

pub mod cuts;
pub mod cuttree;
pub mod ends;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod io;
pub mod perm;
pub mod qi;
pub mod treeset;

pub use cuts::{classify_cut, enumerate_tight_cuts, find_structure_cuts, orbit_closure, Cut, Triviality};
pub use cuttree::{
    build_cut_tree, induced_aut, l_analysis, phi, phi_partial, region, tree_to_dot, CutTree, InducedAut, LReport, Structure, StructureMapping, TreeVertex,
};
pub use ends::{
    almost_transitivity, classify_ends, end_shadows, end_stab_check, equivalence_proxies, map_ends, phi_end, star_ball_scan, EndAnalysis, EndKind, EndLabel,
    EndMap, EndShadow, EndStabReport, EndTarget, EquivalenceProxies, PhiEnd, StarBallScan, Thickness, TransitivityScan,
};
pub use error::{Error, Result};
pub use flow::vertex_disjoint_paths;
pub use generators::{generate, Family, FamilyBundle, FamilySpec, OrbitClaim};
pub use graph::{Boundaries, Component, Edge, GraphJson, TruncatedGraph, Vertex, VertexSet};
pub use perm::{graph_automorphisms, group_closure, is_automorphism, Permutation};
pub use qi::{classify_trend, covering_ball_check, qi_constants, qi_trend, region_trend, CoveringBall, QiAssessment, QiReport, RegionTrend, Trend, Verdict};
pub use treeset::{check_tree_set, check_tree_set_strict, Relation, TreeSet, TreeSetViolation};
