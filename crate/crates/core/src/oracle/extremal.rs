//! Exact `ex_P(n, H)`: the most edges of a planar `H`-free graph on `n`
//! vertices, searched by descending edge targets.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{Counters, Rules};
use super::{OracleError, SearchConfig};
use crate::canon::{canonical_code, CanonicalCode};
use crate::cycles::CyclePattern;
use crate::graph::Graph;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub pattern: CyclePattern,
    pub max_edges: usize,
    /// One code per isomorphism class at the maximum, sorted.
    pub witnesses: Vec<CanonicalCode>,
    pub graphs_seen: u64,
    pub graphs_pruned: u64,
    /// Edge targets tried, highest first; the last one succeeded.
    pub targets: Vec<usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Equality ignores `elapsed`.
impl PartialEq for SearchResult {
    fn eq(&self, o: &Self) -> bool {
        (self.n, &self.pattern, self.max_edges, &self.witnesses) == (o.n, &o.pattern, o.max_edges, &o.witnesses)
            && (self.graphs_seen, self.graphs_pruned, &self.targets) == (o.graphs_seen, o.graphs_pruned, &o.targets)
    }
}

impl Eq for SearchResult {}

pub fn ex_planar(n: usize, p: &CyclePattern) -> Result<SearchResult, OracleError> {
    ex_planar_with(n, p, &SearchConfig::default())
}

pub fn ex_planar_with(n: usize, p: &CyclePattern, cfg: &SearchConfig) -> Result<SearchResult, OracleError> {
    if n > cfg.cap {
        return Err(OracleError::CapExceeded { n, cap: cfg.cap });
    }
    let started = Instant::now();
    let mut store = match &cfg.checkpoint {
        Some(path) => Some(CheckpointStore::open(path, n, p)?),
        None => None,
    };
    let top = if n < 3 { n * n.saturating_sub(1) / 2 } else { 3 * n - 6 };
    let mut total = Counters::default();
    let mut targets = Vec::new();
    for m in (0..=top).rev() {
        targets.push(m);
        let rules = Rules {
            n,
            planar: true,
            free_of: Some(p),
            max_degree: None,
            max_edges: None,
            edge_target: Some(m),
            prune_planarity: cfg.prune_planarity,
            prune_pattern: cfg.prune_pattern,
            prune_edge_bound: cfg.prune_edge_bound,
        };
        let (witnesses, counters) = search_target(&rules, m, cfg, store.as_mut())?;
        total.add(&counters);
        if !witnesses.is_empty() {
            let max_edges = m;
            return Ok(SearchResult {
                n,
                pattern: p.clone(),
                max_edges,
                witnesses,
                graphs_seen: total.seen,
                graphs_pruned: total.pruned,
                targets,
                elapsed: started.elapsed(),
            });
        }
    }
    unreachable!("the empty graph meets target 0")
}

/// All classes with at least `m` edges meeting the rules, plus counters.
fn search_target(
    rules: &Rules<'_>,
    m: usize,
    cfg: &SearchConfig,
    store: Option<&mut CheckpointStore>,
) -> Result<(Vec<CanonicalCode>, Counters), OracleError> {
    let (prefixes, mut counters) = rules.frontier();
    let leaf = |g: &Graph| (g.edge_count() >= m && rules.complete_ok(g)).then(|| canonical_code(g));
    let done: BTreeMap<usize, PrefixOutcome> = store
        .as_ref()
        .map(|s| s.progress(m, prefixes.len()))
        .unwrap_or_default();
    let store = store.map(Mutex::new);
    let fresh: Vec<(usize, Result<PrefixOutcome, OracleError>)> = cfg.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .filter(|(i, _)| !done.contains_key(i))
            .map(|(i, prefix)| {
                let (c, witnesses) = rules.run_prefix(prefix, &leaf);
                let outcome = PrefixOutcome {
                    seen: c.seen,
                    pruned: c.pruned,
                    witnesses,
                };
                let saved = match &store {
                    Some(s) => s.lock().unwrap().record(m, prefixes.len(), i, &outcome),
                    None => Ok(()),
                };
                (i, saved.map(|_| outcome))
            })
            .collect()
    });
    let mut all: BTreeMap<usize, PrefixOutcome> = done;
    for (i, r) in fresh {
        all.insert(i, r?);
    }
    let mut witnesses = Vec::new();
    for o in all.into_values() {
        counters.add(&Counters {
            seen: o.seen,
            pruned: o.pruned,
        });
        witnesses.extend(o.witnesses);
    }
    witnesses.sort();
    witnesses.dedup();
    Ok((witnesses, counters))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PrefixOutcome {
    seen: u64,
    pruned: u64,
    witnesses: Vec<CanonicalCode>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct TargetProgress {
    prefixes: usize,
    done: BTreeMap<usize, PrefixOutcome>,
}

/// Resumable record of finished subtrees keyed by (n, pattern, target,
/// prefix index).
#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    n: usize,
    pattern: String,
    targets: BTreeMap<usize, TargetProgress>,
}

struct CheckpointStore {
    path: PathBuf,
    state: Checkpoint,
}

impl CheckpointStore {
    fn open(path: &Path, n: usize, p: &CyclePattern) -> Result<Self, OracleError> {
        let fresh = Checkpoint {
            version: 1,
            n,
            pattern: p.to_string(),
            targets: BTreeMap::new(),
        };
        let state = match fs::read_to_string(path) {
            Ok(text) => {
                let saved: Checkpoint = serde_json::from_str(&text).map_err(|source| OracleError::CorruptCheckpoint {
                    path: path.to_path_buf(),
                    source,
                })?;
                if saved.version == fresh.version && saved.n == n && saved.pattern == fresh.pattern {
                    saved
                } else {
                    fresh
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => fresh,
            Err(source) => {
                return Err(OracleError::Checkpoint {
                    path: path.to_path_buf(),
                    source,
                })
            }
        };
        Ok(CheckpointStore {
            path: path.to_path_buf(),
            state,
        })
    }

    fn progress(&self, m: usize, prefixes: usize) -> BTreeMap<usize, PrefixOutcome> {
        match self.state.targets.get(&m) {
            Some(t) if t.prefixes == prefixes => t.done.clone(),
            _ => BTreeMap::new(),
        }
    }

    fn record(&mut self, m: usize, prefixes: usize, i: usize, o: &PrefixOutcome) -> Result<(), OracleError> {
        let t = self.state.targets.entry(m).or_default();
        if t.prefixes != prefixes {
            *t = TargetProgress {
                prefixes,
                done: BTreeMap::new(),
            };
        }
        t.done.insert(i, o.clone());
        let text = serde_json::to_string(&self.state).expect("checkpoint serializes");
        let tmp = self.path.with_extension("tmp");
        let io = |source| OracleError::Checkpoint {
            path: self.path.clone(),
            source,
        };
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }
}
