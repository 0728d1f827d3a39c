//! Canonical labeling of small graphs.
//!
//! Equitable refinement followed by individualization, keeping the labeling
//! with the lexicographically smallest adjacency matrix. Automorphisms found at
//! equal leaves prune sibling branches. Supports up to 64 vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

pub const MAX_CANON_VERTICES: usize = 64;

/// Byte string identifying an isomorphism class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// Rebuilds the canonical representative encoded by this code.
    pub fn decode(&self) -> Graph {
        let n = self.0[0] as usize;
        let bits = &self.0[1 + n..];
        let mut g = Graph::empty(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k / 8] & (0x80 >> (k % 8)) != 0 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

impl From<CanonicalCode> for String {
    fn from(c: CanonicalCode) -> String {
        c.to_hex()
    }
}

impl TryFrom<String> for CanonicalCode {
    type Error = hex::FromHexError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        hex::decode(s).map(CanonicalCode)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Result of a canonical labeling run.
#[derive(Debug, Clone)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<Vertex>,
    /// Automorphism generators discovered during the search.
    pub generators: Vec<Vec<Vertex>>,
}

impl Labeling {
    /// Orbit representative (smallest member) of every vertex under the
    /// group generated by `generators`.
    pub fn orbits(&self) -> Vec<Vertex> {
        let n = self.order.len();
        let mut rep: Vec<Vertex> = (0..n).collect();
        fn root(rep: &mut [Vertex], mut x: Vertex) -> Vertex {
            while rep[x] != x {
                rep[x] = rep[rep[x]];
                x = rep[x];
            }
            x
        }
        for gen in &self.generators {
            for (v, &w) in gen.iter().enumerate() {
                let (a, b) = (root(&mut rep, v), root(&mut rep, w));
                if a != b {
                    rep[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| root(&mut rep, v)).collect()
    }

    /// Code of `g` under this labeling, equal to `canonical_code(g)` when the
    /// labeling came from `canonical_labeling(g)`.
    pub fn code(&self, g: &Graph) -> CanonicalCode {
        encode(g, &self.order, None)
    }
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    best: Option<(Vec<u64>, Vec<Vertex>)>,
    generators: Vec<Vec<Vertex>>,
}

type Partition = Vec<Vec<Vertex>>;

impl Search<'_> {
    fn refine(&self, cells: &mut Partition) {
        loop {
            let mut changed = false;
            'scan: for s in 0..cells.len() {
                let mask = cells[s].iter().fold(0u64, |m, &v| m | (1u64 << v));
                for c in 0..cells.len() {
                    if cells[c].len() == 1 {
                        continue;
                    }
                    let count = |v: Vertex| (self.adj[v] & mask).count_ones();
                    let first = count(cells[c][0]);
                    if cells[c].iter().all(|&v| count(v) == first) {
                        continue;
                    }
                    let mut keyed: Vec<(u32, Vertex)> =
                        cells[c].iter().map(|&v| (count(v), v)).collect();
                    keyed.sort_unstable();
                    let mut parts: Vec<Vec<Vertex>> = Vec::new();
                    let mut last = None;
                    for (k, v) in keyed {
                        if last != Some(k) {
                            parts.push(Vec::new());
                            last = Some(k);
                        }
                        parts.last_mut().unwrap().push(v);
                    }
                    cells.splice(c..c + 1, parts);
                    changed = true;
                    break 'scan;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn leaf_rows(&self, order: &[Vertex]) -> Vec<u64> {
        let mut pos = [0usize; MAX_CANON_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                let mut bits = self.adj[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= 1u64 << (63 - pos[w]);
                }
                row
            })
            .collect()
    }

    fn orbit_roots(&self, prefix: &[Vertex]) -> Vec<Vertex> {
        let mut parent: Vec<Vertex> = (0..self.n).collect();
        fn find(p: &mut [Vertex], mut x: Vertex) -> Vertex {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gen in &self.generators {
            if prefix.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for (x, &y) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|x| find(&mut parent, x)).collect()
    }

    fn visit(&mut self, mut cells: Partition, prefix: &mut Vec<Vertex>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<Vertex> = cells.into_iter().map(|c| c[0]).collect();
            let rows = self.leaf_rows(&order);
            match &self.best {
                Some((best_rows, best_order)) if rows == *best_rows => {
                    let mut gen = vec![0; self.n];
                    for (b, o) in best_order.iter().zip(&order) {
                        gen[*b] = *o;
                    }
                    if gen.iter().enumerate().any(|(i, &j)| i != j) {
                        self.generators.push(gen);
                    }
                }
                Some((best_rows, _)) if rows > *best_rows => {}
                _ => self.best = Some((rows, order)),
            }
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<Vertex> = Vec::new();
        for v in candidates {
            if !explored.is_empty() {
                let roots = self.orbit_roots(prefix);
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            let mut child = cells.clone();
            let rest: Vec<Vertex> = child[target].iter().copied().filter(|&x| x != v).collect();
            child.splice(target..target + 1, [vec![v], rest]);
            prefix.push(v);
            self.visit(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    assert!(
        g.n() <= MAX_CANON_VERTICES,
        "canonical labeling supports at most {MAX_CANON_VERTICES} vertices"
    );
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1u64 << w)))
        .collect()
}

/// Canonical labeling of a vertex-colored graph. Vertices with smaller colors
/// are placed first.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Labeling {
    assert_eq!(colors.len(), g.n());
    let adj = masks(g);
    let mut search = Search {
        adj: &adj,
        n: g.n(),
        best: None,
        generators: Vec::new(),
    };
    if g.n() == 0 {
        return Labeling {
            order: Vec::new(),
            generators: Vec::new(),
        };
    }
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Partition = palette
        .iter()
        .map(|&c| (0..g.n()).filter(|&v| colors[v] == c).collect())
        .collect();
    search.visit(cells, &mut Vec::new());
    let (_, order) = search.best.expect("search visits at least one leaf");
    Labeling {
        order,
        generators: search.generators,
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    canonical_labeling_colored(g, &vec![0; g.n()])
}

fn encode(g: &Graph, order: &[Vertex], colors: Option<&[u32]>) -> CanonicalCode {
    let n = g.n();
    let mut bytes = Vec::with_capacity(1 + n + n * n / 16 + 1);
    bytes.push(n as u8);
    for &v in order {
        bytes.push(colors.map_or(0, |c| c[v].min(255) as u8));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                acc |= 0x80 >> (k % 8);
            }
            k += 1;
            if k % 8 == 0 {
                bytes.push(acc);
                acc = 0;
            }
        }
    }
    if k % 8 != 0 {
        bytes.push(acc);
    }
    CanonicalCode(bytes)
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    let lab = canonical_labeling(g);
    encode(g, &lab.order, None)
}

pub fn canonical_code_colored(g: &Graph, colors: &[u32]) -> CanonicalCode {
    let lab = canonical_labeling_colored(g, colors);
    encode(g, &lab.order, Some(colors))
}

/// The canonical representative: `g` relabeled by its canonical order.
pub fn canonical_form(g: &Graph) -> Graph {
    let lab = canonical_labeling(g);
    let mut perm = vec![0; g.n()];
    for (i, &v) in lab.order.iter().enumerate() {
        perm[v] = i;
    }
    g.relabel(&perm)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_code(a) == canonical_code(b)
}

/// Whether some automorphism of `g` maps `a` to `b`.
pub fn same_orbit(g: &Graph, a: Vertex, b: Vertex) -> bool {
    if a == b {
        return true;
    }
    if g.degree(a) != g.degree(b) {
        return false;
    }
    let mut colors = vec![1; g.n()];
    colors[a] = 0;
    let ca = canonical_code_colored(g, &colors);
    colors[a] = 1;
    colors[b] = 0;
    ca == canonical_code_colored(g, &colors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn petersen_relabelings_agree() {
        let g = petersen();
        let code = canonical_code(&g);
        let p1 = [3, 7, 0, 9, 1, 4, 8, 2, 6, 5];
        let p2 = [9, 8, 7, 6, 5, 4, 3, 2, 1, 0];
        assert_eq!(canonical_code(&g.relabel(&p1)), code);
        assert_eq!(canonical_code(&g.relabel(&p2)), code);
    }

    #[test]
    fn c5_differs_from_p5() {
        assert_ne!(canonical_code(&Graph::cycle(5)), canonical_code(&Graph::path(5)));
    }

    #[test]
    fn k4_relabelings_give_one_code() {
        let k4 = Graph::complete(4);
        let mut codes: Vec<_> = permutations(4)
            .iter()
            .map(|p| canonical_code(&k4.relabel(p)))
            .collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let k4 = Graph::complete(4);
        assert!(is_isomorphic(&k4, &k4.relabel(&[2, 0, 3, 1])));
        let two_triangles = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert!(!is_isomorphic(&Graph::cycle(6), &two_triangles));
        // W5 versus K2 ∨ P3 with the K2 edge removed: both are K1 ∨ C4.
        let w5 = Graph::empty(1).join(&Graph::cycle(4));
        let mut k2p3 = Graph::complete(2).join(&Graph::path(3));
        k2p3.remove_edge(0, 1);
        assert!(is_isomorphic(&w5, &k2p3));
    }

    #[test]
    fn decode_round_trips() {
        let g = petersen();
        let code = canonical_code(&g);
        let back = code.decode();
        assert!(is_isomorphic(&g, &back));
        assert_eq!(canonical_code(&back), code);
    }

    #[test]
    fn orbits() {
        let star = Graph::empty(1).join(&Graph::empty(4));
        assert!(same_orbit(&star, 1, 4));
        assert!(!same_orbit(&star, 0, 1));
        let p4 = Graph::path(4);
        assert!(same_orbit(&p4, 0, 3));
        assert!(!same_orbit(&p4, 0, 1));
    }

    #[test]
    fn symmetric_graphs_finish() {
        for n in [0, 1, 12, 40] {
            let e = Graph::empty(n);
            assert_eq!(canonical_code(&e), canonical_code(&e.relabel(&(0..n).rev().collect::<Vec<_>>())));
        }
        let k = Graph::complete(20);
        assert_eq!(canonical_labeling(&k).order.len(), 20);
    }
}
