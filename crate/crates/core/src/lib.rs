//! Zarankiewicz numbers for bipartite graphs.
//!
//! `z(m,n;s,t)` is the largest number of edges in a bipartite graph with parts
//! of size `m` and `n` that contains no `K_{s,t}` (with the `s` vertices in the
//! first part). This crate provides the graph model, canonical forms,
//! the counting bounds, extension and enumeration searches, group-based
//! constructions and the bipartite Ramsey helpers built on top of them.

pub mod biclique;
pub mod bigraph;
pub mod bitset;
pub mod bounds;
pub mod canon;
pub mod data;
pub mod extend;
pub mod fsutil;
pub mod groups;
pub mod ramsey;

pub use biclique::Biclique;
pub use bigraph::{BiGraph, DegreeSequence, GraphError, ParseError, ParseErrorKind, Side};
pub use bounds::{
    balanced_composition, density_step_bound, star_bound_max_edges, star_sum, z_bound, BoundTable, BoundsError,
    Composition, Entry,
};
pub use canon::{
    canonical_form, canonical_form_with_reflection, canonize, dedup, group_order_with_reflection, is_isomorphic,
    Canonical, CanonicalKey, DedupOptions,
};
pub use extend::{
    enumerate_class, extend_step, member_check, parse_spec, plan_path, run_path, BackwardsPath, ClassSpec,
    EnumerateOptions, ExtendError,
};
pub use groups::{cayley_bigraph, enumerate_sidon, is_sidon, Group, GroupError};
pub use ramsey::{derive_ramsey_upper, upper_bound_check, verify_witness, AvoidanceSpec, Coloring, RamseyError};
