//! Orderly generation by canonical augmentation.
//!
//! A graph on `j + 1` vertices is produced from one on `j` vertices by adding
//! a vertex joined to a subset. The child is kept only when the new vertex is
//! in the automorphism orbit of the canonical deletion vertex: the
//! minimum-degree vertex placed last by the canonical labeling. Each class
//! then has exactly one parent class, so isomorphic children can only arise
//! from the same parent and are removed locally.
//!
//! Since the deleted vertex always has minimum degree, every prefix is an
//! induced subgraph of the final graph, and hereditary properties (planarity,
//! freeness, degree and edge caps) can prune whole subtrees.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{OracleError, SearchConfig};
use crate::canon::canonical_labeling;
use crate::cycles::{is_free, CyclePattern};
use crate::graph::Graph;
use crate::plane::is_planar;

/// Hard cap on generation order.
pub const DEFAULT_CAP: usize = 10;

/// Prefixes handed to workers; fixed so checkpoints do not depend on `jobs`.
const SPLIT_WIDTH: usize = 64;

#[derive(Debug, Clone, Default)]
pub struct Filters {
    pub connected: bool,
    pub min_edges: Option<usize>,
    pub max_edges: Option<usize>,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub planar: bool,
    pub free_of: Option<CyclePattern>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    /// Accepted nodes of the generation tree.
    pub seen: u64,
    /// Children discarded by a pruning rule.
    pub pruned: u64,
}

impl Counters {
    pub(crate) fn add(&mut self, o: &Counters) {
        self.seen += o.seen;
        self.pruned += o.pruned;
    }
}

pub(crate) struct Rules<'a> {
    pub n: usize,
    pub planar: bool,
    pub free_of: Option<&'a CyclePattern>,
    pub max_degree: Option<usize>,
    pub max_edges: Option<usize>,
    /// Final edge count to reach; enables the edge ceiling.
    pub edge_target: Option<usize>,
    pub prune_planarity: bool,
    pub prune_pattern: bool,
    pub prune_edge_bound: bool,
}

impl<'a> Rules<'a> {
    pub fn from_filters(n: usize, f: &'a Filters, cfg: &SearchConfig) -> Self {
        Rules {
            n,
            planar: f.planar,
            free_of: f.free_of.as_ref(),
            max_degree: f.max_degree,
            max_edges: f.max_edges,
            edge_target: None,
            prune_planarity: cfg.prune_planarity,
            prune_pattern: cfg.prune_pattern,
            prune_edge_bound: cfg.prune_edge_bound,
        }
    }

    /// Most edges a planar graph on `n` vertices can have when it arises from
    /// a `j`-vertex, `e`-edge prefix by adding minimum-degree vertices.
    ///
    /// A vertex of degree `d` added to reach `k` vertices has `d ≤ k − 1`,
    /// `d ≤ 5` and `d·k ≤ 2(e + d)`; the total stays within `3k − 6`. Each
    /// cap grows with `e`, so taking the largest `d` at every step is optimal.
    pub fn edge_ceiling(&self, j: usize, mut e: usize) -> usize {
        for k in j + 1..=self.n {
            let mut d = (k - 1).min(5);
            if k > 2 {
                d = d.min(2 * e / (k - 2)).min((3 * k - 6).saturating_sub(e));
            }
            e += d;
        }
        e
    }

    fn planar_size_ok(h: &Graph) -> bool {
        h.n() < 3 || h.edge_count() <= 3 * h.n() - 6
    }

    /// Canonical children of `g`, in subset order.
    pub fn children(&self, g: &Graph, c: &mut Counters) -> Vec<Graph> {
        let j = g.n();
        let e = g.edge_count();
        let deg: Vec<usize> = (0..j).map(|v| g.degree(v)).collect();
        let mut codes = HashSet::new();
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << j) {
            let d = mask.count_ones() as usize;
            let bit = |v: usize| (mask >> v & 1) as usize;
            // The new vertex must be a minimum-degree vertex of the child.
            if (0..j).any(|v| deg[v] + bit(v) < d) {
                continue;
            }
            if let Some(md) = self.max_degree {
                if d > md || (0..j).any(|v| deg[v] + bit(v) > md) {
                    c.pruned += 1;
                    continue;
                }
            }
            if self.max_edges.is_some_and(|me| e + d > me) {
                c.pruned += 1;
                continue;
            }
            if self.prune_edge_bound {
                if let Some(t) = self.edge_target {
                    if self.edge_ceiling(j + 1, e + d) < t {
                        c.pruned += 1;
                        continue;
                    }
                }
            }
            let mut h = g.clone();
            let z = h.add_vertex();
            for v in (0..j).filter(|&v| bit(v) == 1) {
                h.add_edge(z, v);
            }
            if self.planar && self.prune_planarity && !(Self::planar_size_ok(&h) && is_planar(&h)) {
                c.pruned += 1;
                continue;
            }
            if self.prune_pattern {
                if let Some(p) = self.free_of {
                    if !is_free(&h, p) {
                        c.pruned += 1;
                        continue;
                    }
                }
            }
            let lab = canonical_labeling(&h);
            let min_deg = h.min_degree();
            let mut pos = vec![0; j + 1];
            for (i, &v) in lab.order.iter().enumerate() {
                pos[v] = i;
            }
            let w = (0..=j)
                .filter(|&v| h.degree(v) == min_deg)
                .max_by_key(|&v| pos[v])
                .expect("nonempty graph");
            let orbits = lab.orbits();
            if orbits[w] != orbits[z] {
                continue;
            }
            if !codes.insert(lab.code(&h)) {
                continue;
            }
            c.seen += 1;
            out.push(h);
        }
        out
    }

    /// Hereditary requirements on a complete graph for the rules whose pruning
    /// was switched off. The others already held for every tree node; the
    /// roots on at most one vertex satisfy all of them.
    pub fn complete_ok(&self, h: &Graph) -> bool {
        if self.planar && !self.prune_planarity && !(Self::planar_size_ok(h) && is_planar(h)) {
            return false;
        }
        self.prune_pattern || self.free_of.is_none_or(|p| is_free(h, p))
    }

    fn dfs<T>(&self, g: Graph, c: &mut Counters, leaf: &(dyn Fn(&Graph) -> Option<T> + Sync), out: &mut Vec<T>) {
        if g.n() == self.n {
            if let Some(t) = leaf(&g) {
                out.push(t);
            }
            return;
        }
        for h in self.children(&g, c) {
            self.dfs(h, c, leaf, out);
        }
    }

    /// Root prefixes for the workers and the counters spent building them.
    pub fn frontier(&self) -> (Vec<Graph>, Counters) {
        let mut c = Counters::default();
        if self.n == 0 {
            return (vec![Graph::empty(0)], c);
        }
        let mut level = vec![Graph::empty(1)];
        c.seen += 1;
        while level.len() < SPLIT_WIDTH && level.first().is_some_and(|g| g.n() < self.n) {
            level = level.iter().flat_map(|g| self.children(g, &mut c)).collect();
        }
        (level, c)
    }

    /// Runs the subtree below `prefix` and reports its leaves.
    pub fn run_prefix<T>(&self, prefix: &Graph, leaf: &(dyn Fn(&Graph) -> Option<T> + Sync)) -> (Counters, Vec<T>) {
        let mut c = Counters::default();
        let mut out = Vec::new();
        self.dfs(prefix.clone(), &mut c, leaf, &mut out);
        (c, out)
    }
}

pub fn generate_graphs(n: usize, filters: &Filters) -> Result<Vec<Graph>, OracleError> {
    generate_graphs_with(n, filters, &SearchConfig::default())
}

/// One graph per isomorphism class on `n` vertices passing `filters`, in a
/// deterministic order independent of `cfg.jobs`.
pub fn generate_graphs_with(n: usize, filters: &Filters, cfg: &SearchConfig) -> Result<Vec<Graph>, OracleError> {
    if n > cfg.cap {
        return Err(OracleError::CapExceeded { n, cap: cfg.cap });
    }
    let rules = Rules::from_filters(n, filters, cfg);
    let leaf = |g: &Graph| -> Option<Graph> {
        let e = g.edge_count();
        let ok = rules.complete_ok(g)
            && (!filters.connected || g.is_connected())
            && filters.min_edges.is_none_or(|m| e >= m)
            && filters.max_edges.is_none_or(|m| e <= m)
            && filters.min_degree.is_none_or(|m| g.n() == 0 || g.min_degree() >= m)
            && filters.max_degree.is_none_or(|m| g.max_degree() <= m);
        ok.then(|| g.clone())
    };
    let (prefixes, _) = rules.frontier();
    let parts: Vec<Vec<Graph>> = cfg.install(|| prefixes.par_iter().map(|p| rules.run_prefix(p, &leaf).1).collect());
    Ok(parts.into_iter().flatten().collect())
}
