//! Cycles and vertex-disjoint unions of cycles.
//!
//! The search takes the shortest requested cycle first, deletes its vertices
//! and recurses. Cycles are enumerated from their highest-degree vertex so hubs
//! are only ever entered as a starting point. Before recursing on a candidate
//! cycle, the rest of the pattern is tested in the graph minus the candidate's
//! highest-degree vertex alone; when that already fails, every candidate
//! through that vertex is skipped. The answer is cached per deleted set.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("cycle length {0} is below 3")]
    TooShort(usize),
    #[error("pattern requests no cycle")]
    Empty,
    #[error("cannot parse pattern term {0:?}")]
    Syntax(String),
}

/// Vertex-disjoint union of cycles with given lengths plus `wildcard` more of
/// arbitrary length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CyclePattern {
    exact: Vec<usize>,
    wildcard: usize,
}

impl CyclePattern {
    pub fn new(mut exact: Vec<usize>, wildcard: usize) -> Result<Self, PatternError> {
        if let Some(&k) = exact.iter().find(|&&k| k < 3) {
            return Err(PatternError::TooShort(k));
        }
        if exact.is_empty() && wildcard == 0 {
            return Err(PatternError::Empty);
        }
        exact.sort_unstable();
        Ok(CyclePattern { exact, wildcard })
    }

    /// Disjoint cycles of the given lengths.
    pub fn lengths(lengths: &[usize]) -> Self {
        Self::new(lengths.to_vec(), 0).expect("valid cycle lengths")
    }

    /// `t` disjoint cycles of any length.
    pub fn disjoint(t: usize) -> Self {
        Self::new(Vec::new(), t).expect("at least one cycle")
    }

    pub fn exact_lengths(&self) -> &[usize] {
        &self.exact
    }

    pub fn wildcard_count(&self) -> usize {
        self.wildcard
    }

    pub fn cycle_count(&self) -> usize {
        self.exact.len() + self.wildcard
    }

    /// Fewest vertices any occurrence can use.
    pub fn min_vertices(&self) -> usize {
        self.exact.iter().sum::<usize>() + 3 * self.wildcard
    }

    fn requirements(&self) -> Vec<Req> {
        let mut reqs: Vec<Req> = self.exact.iter().map(|&k| Req::Exact(k)).collect();
        reqs.extend(std::iter::repeat_n(Req::Any, self.wildcard));
        reqs
    }
}

impl fmt::Display for CyclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let mut i = 0;
        while i < self.exact.len() {
            let k = self.exact[i];
            let c = self.exact[i..].iter().take_while(|&&x| x == k).count();
            terms.push(if c == 1 { format!("C{k}") } else { format!("{c}C{k}") });
            i += c;
        }
        match self.wildcard {
            0 => {}
            1 => terms.push("C".into()),
            w => terms.push(format!("{w}C")),
        }
        f.write_str(&terms.join("+"))
    }
}

impl FromStr for CyclePattern {
    type Err = PatternError;

    /// Grammar: terms joined by `+`, each `[count]C[length]`; a term without a
    /// length asks for cycles of any length. `C3+C5`, `2C3`, `3C`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut exact = Vec::new();
        let mut wildcard = 0;
        for raw in s.split('+') {
            let term = raw.trim();
            let syntax = || PatternError::Syntax(term.to_string());
            let c_at = term.find(['C', 'c']).ok_or_else(syntax)?;
            let (count, len) = (&term[..c_at], &term[c_at + 1..]);
            let count: usize = if count.is_empty() {
                1
            } else {
                count.parse().map_err(|_| syntax())?
            };
            if count == 0 {
                return Err(syntax());
            }
            if len.is_empty() {
                wildcard += count;
            } else {
                let k: usize = len.parse().map_err(|_| syntax())?;
                exact.extend(std::iter::repeat_n(k, count));
            }
        }
        CyclePattern::new(exact, wildcard)
    }
}

impl From<CyclePattern> for String {
    fn from(p: CyclePattern) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for CyclePattern {
    type Error = PatternError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Pairwise vertex-disjoint cycles, each listed from its smallest vertex in
/// the direction with the smaller second vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub cycles: Vec<Vec<Vertex>>,
}

impl CycleWitness {
    /// Checks every cycle against `g` and pairwise disjointness.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        for c in &self.cycles {
            if c.len() < 3 {
                return false;
            }
            for (i, &v) in c.iter().enumerate() {
                if v >= g.n() || used[v] || !g.has_edge(v, c[(i + 1) % c.len()]) {
                    return false;
                }
                used[v] = true;
            }
        }
        true
    }

    /// Whether the cycle lengths realize `p`.
    pub fn matches(&self, p: &CyclePattern) -> bool {
        if self.cycles.len() != p.cycle_count() {
            return false;
        }
        let mut lens: Vec<usize> = self.cycles[..p.exact.len()].iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens == p.exact
    }
}

pub fn normalize_cycle(mut c: Vec<Vertex>) -> Vec<Vertex> {
    let pos = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
    c.rotate_left(pos);
    if c.len() > 2 && c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Req {
    Exact(usize),
    Any,
}

/// Depth-first enumeration state for one kind of cycle in the current
/// (partially deleted) graph. Every cycle is produced once: from its
/// lowest-ranked vertex, in the direction whose second vertex ranks lower.
struct Cursor {
    req: Req,
    next_start: usize,
    path: Vec<Vertex>,
    iters: Vec<usize>,
}

impl Cursor {
    fn new(req: Req) -> Self {
        Cursor {
            req,
            next_start: 0,
            path: Vec::new(),
            iters: Vec::new(),
        }
    }

    fn next(&mut self, det: &Detector<'_>) -> Option<Vec<Vertex>> {
        let g = det.g;
        loop {
            if self.path.is_empty() {
                while self.next_start < det.order.len() && det.removed[det.order[self.next_start]] {
                    self.next_start += 1;
                }
                let &s = det.order.get(self.next_start)?;
                self.next_start += 1;
                self.path.push(s);
                self.iters.push(0);
                continue;
            }
            let depth = self.path.len() - 1;
            let v = self.path[depth];
            let i = self.iters[depth];
            let nbrs = g.neighbors(v);
            if i >= nbrs.len() {
                self.path.pop();
                self.iters.pop();
                continue;
            }
            self.iters[depth] += 1;
            let w = nbrs[i];
            let s = self.path[0];
            if det.removed[w] || det.rank[w] <= det.rank[s] || self.path.contains(&w) {
                continue;
            }
            match self.req {
                Req::Exact(k) => {
                    if self.path.len() + 1 == k {
                        if g.has_edge(w, s) && det.rank[self.path[1]] < det.rank[w] {
                            let mut c = self.path.clone();
                            c.push(w);
                            return Some(c);
                        }
                    } else {
                        self.path.push(w);
                        self.iters.push(0);
                    }
                }
                Req::Any => {
                    if self.path[1..depth.max(1)].iter().any(|&x| g.has_edge(w, x)) {
                        continue;
                    }
                    if self.path.len() >= 2 && g.has_edge(w, s) {
                        if det.rank[self.path[1]] < det.rank[w] {
                            let mut c = self.path.clone();
                            c.push(w);
                            return Some(c);
                        }
                    } else {
                        self.path.push(w);
                        self.iters.push(0);
                    }
                }
            }
        }
    }
}

struct Detector<'a> {
    g: &'a Graph,
    /// Vertices by non-increasing degree; `rank` is the inverse.
    order: Vec<Vertex>,
    rank: Vec<usize>,
    removed: Vec<bool>,
    removed_list: Vec<Vertex>,
    reqs: Vec<Req>,
    memo: HashMap<(Vec<Vertex>, usize), bool>,
}

impl<'a> Detector<'a> {
    fn new(g: &'a Graph, reqs: Vec<Req>) -> Self {
        let mut order: Vec<Vertex> = (0..g.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut rank = vec![0; g.n()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        Detector {
            g,
            order,
            rank,
            removed: vec![false; g.n()],
            removed_list: Vec::new(),
            reqs,
            memo: HashMap::new(),
        }
    }

    fn remove(&mut self, vs: &[Vertex]) {
        for &v in vs {
            self.removed[v] = true;
            self.removed_list.push(v);
        }
    }

    fn restore(&mut self, count: usize) {
        for _ in 0..count {
            let v = self.removed_list.pop().unwrap();
            self.removed[v] = false;
        }
    }

    fn any_cycle(&self) -> Option<Vec<Vertex>> {
        let n = self.g.n();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if self.removed[root] || depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                let nbrs = self.g.neighbors(v);
                if *i >= nbrs.len() {
                    stack.pop();
                    continue;
                }
                let w = nbrs[*i];
                *i += 1;
                if self.removed[w] || w == parent[v] {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    stack.push((w, 0));
                } else if depth[w] < depth[v] {
                    let mut c = vec![v];
                    let mut x = v;
                    while x != w {
                        x = parent[x];
                        c.push(x);
                    }
                    return Some(c);
                }
            }
        }
        None
    }

    /// Whether requirements `level..` can be met after also deleting `y`.
    fn feasible_without(&mut self, y: Vertex, level: usize) -> bool {
        let mut key: Vec<Vertex> = self.removed_list.clone();
        key.push(y);
        key.sort_unstable();
        let key = (key, level);
        if let Some(&ok) = self.memo.get(&key) {
            return ok;
        }
        self.remove(&[y]);
        let ok = self.search(level).is_some();
        self.restore(1);
        self.memo.insert(key, ok);
        ok
    }

    fn search(&mut self, level: usize) -> Option<Vec<Vec<Vertex>>> {
        if level == self.reqs.len() {
            return Some(Vec::new());
        }
        let req = self.reqs[level];
        let last = level + 1 == self.reqs.len();
        if last && req == Req::Any {
            return self.any_cycle().map(|c| vec![c]);
        }
        let mut cursor = Cursor::new(req);
        while let Some(c) = cursor.next(self) {
            if last {
                return Some(vec![c]);
            }
            let hub = *c.iter().min_by_key(|&&v| self.rank[v]).unwrap();
            if !self.feasible_without(hub, level + 1) {
                continue;
            }
            self.remove(&c);
            let rest = self.search(level + 1);
            self.restore(c.len());
            if let Some(mut rest) = rest {
                rest.insert(0, c);
                return Some(rest);
            }
        }
        None
    }
}

/// A `k`-cycle of `g`, if any.
pub fn find_cycle(g: &Graph, k: usize) -> Option<CycleWitness> {
    assert!(k >= 3, "cycle length must be at least 3");
    find_pattern(g, &CyclePattern::lengths(&[k]))
}

/// Vertex-disjoint cycles realizing `p`, if `g` contains them.
pub fn find_pattern(g: &Graph, p: &CyclePattern) -> Option<CycleWitness> {
    if g.n() < p.min_vertices() {
        return None;
    }
    let mut det = Detector::new(g, p.requirements());
    let cycles = det.search(0)?;
    let w = CycleWitness {
        cycles: cycles.into_iter().map(normalize_cycle).collect(),
    };
    debug_assert!(w.validate(g) && w.matches(p));
    Some(w)
}

pub fn is_free(g: &Graph, p: &CyclePattern) -> bool {
    find_pattern(g, p).is_none()
}

/// Every `k`-cycle of `g`, normalized and sorted.
pub fn cycles_of_length(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    assert!(k >= 3, "cycle length must be at least 3");
    let det = Detector::new(g, vec![Req::Exact(k)]);
    let mut cursor = Cursor::new(Req::Exact(k));
    let mut out = Vec::new();
    while let Some(c) = cursor.next(&det) {
        out.push(normalize_cycle(c));
    }
    out.sort();
    out
}

/// Every triangle as a sorted vertex triple, sorted.
pub fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleHub {
    /// Smallest vertex lying on every triangle.
    Vertex(Vertex),
    /// No vertex is common to all triangles.
    Absent,
    /// The graph has no triangle.
    TriangleFree,
}

/// A vertex contained in every triangle of `g`.
pub fn common_triangle_vertex(g: &Graph) -> TriangleHub {
    let tris = triangles(g);
    let Some(first) = tris.first() else {
        return TriangleHub::TriangleFree;
    };
    let mut common: Vec<Vertex> = first.to_vec();
    for t in &tris[1..] {
        common.retain(|v| t.contains(v));
        if common.is_empty() {
            return TriangleHub::Absent;
        }
    }
    TriangleHub::Vertex(common[0])
}
