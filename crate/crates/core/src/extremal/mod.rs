//! Exact extremal values by isomorph-free enumeration, graph6 interchange
//! and a heuristic hill-climb for larger orders.

mod canonical;
mod enumerate;
mod graph6;
mod local;
mod record;
mod rng;

pub use canonical::{are_isomorphic, canonical_form, SmallGraph, SMALL_MAX_N};
pub use enumerate::{enumerate_graphs, shard_roots, EnumerateOptions, GraphStream, DEFAULT_ENUM_CAP, MAX_ENUM_N};
pub use graph6::{graph6_decode, graph6_decode_lines, graph6_encode, GRAPH6_MAX_N};
pub use local::{local_search, local_search_with, theorem_tension, LocalSearchOptions, SearchTrace, TheoremTension};
pub use record::{
    compute_extremal, write_records_csv, BestValue, ExtremalOptions, ExtremalRecord, Objective, Source,
};
pub use rng::SplitMix64;
