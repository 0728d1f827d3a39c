//! Exhaustive search at desk scale.

mod census;
mod enumerate;
mod extremal;
mod generate;
mod known;

use std::path::PathBuf;

use thiserror::Error;

pub use census::{census, census_threshold, CensusRecord};
pub use enumerate::{block_catalog, enumerate_blocks, verify_six_vertex_blocks, BadClass, SixVertexReport, BLOCK_CAP};
pub use extremal::{ex_planar, ex_planar_with, SearchResult};
pub use generate::{generate_graphs, generate_graphs_with, Counters, Filters, DEFAULT_CAP};
pub use known::{compare_known, formula_for, registry, CompareRow, CompareStatus, KnownFormula};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("checkpoint {path}: {source}")]
    Checkpoint {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("checkpoint {path} is corrupt: {source}")]
    CorruptCheckpoint {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Map(#[from] crate::plane::MapError),
}

/// Knobs shared by the searches. Every pruning rule can be switched off to
/// check that it never changes an answer.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub prune_planarity: bool,
    pub prune_pattern: bool,
    pub prune_edge_bound: bool,
    pub cap: usize,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            jobs: 0,
            prune_planarity: true,
            prune_pattern: true,
            prune_edge_bound: true,
            cap: DEFAULT_CAP,
            checkpoint: None,
        }
    }
}

impl SearchConfig {
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.jobs == 0 {
            return f();
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool")
            .install(f)
    }
}
