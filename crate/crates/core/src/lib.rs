//! Planar Turán numbers of disjoint cycle unions.

pub mod blocks;
pub mod canon;
pub mod catalog;
pub mod constructions;
pub mod cycles;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod plane;

pub use canon::{canonical_code, canonical_form, canonical_labeling, is_isomorphic, CanonicalCode};
pub use cycles::{find_cycle, find_pattern, is_free, CyclePattern, CycleWitness};
pub use graph::{Graph, GraphError, Vertex};
pub use blocks::{decompose, TriBlock};
pub use constructions::extremal_c3c5;
pub use plane::{embed_planar, is_planar, Embedding, FaceProfile, MapError, PlaneCode, PlaneMap};
