//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
}

/// A simple graph. Neighbor lists are kept sorted so that equality and
/// hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Adds `uv`, panicking on loops, duplicates or bad ids.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if let Err(e) = self.try_add_edge(u, v) {
            panic!("add_edge: {e}");
        }
    }

    /// Removes `uv` if present; returns whether it was.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Appends a new isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Non-increasing degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Applies `perm`, where `perm[v]` is the new id of `v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = vec![Vec::new(); self.n()];
        for (u, ns) in self.adj.iter().enumerate() {
            let mut mapped: Vec<Vertex> = ns.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            adj[perm[u]] = mapped;
        }
        Graph { adj, m: self.m }
    }

    /// Subgraph induced by `keep`, re-indexed in the order given.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Deletes the given vertices and re-indexes the rest in increasing order.
    pub fn remove_vertices(&self, gone: &[Vertex]) -> Graph {
        let mut drop = vec![false; self.n()];
        for &v in gone {
            drop[v] = true;
        }
        let keep: Vec<Vertex> = (0..self.n()).filter(|&v| !drop[v]).collect();
        self.induced(&keep)
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    /// `self ∨ other`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        let shift = self.n();
        for u in 0..self.n() {
            for v in 0..other.n() {
                g.add_edge(u, v + shift);
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel5() -> Graph {
        Graph::empty(1).join(&Graph::cycle(4))
    }

    #[test]
    fn join_sizes() {
        let w = wheel5();
        assert_eq!((w.n(), w.edge_count()), (5, 8));
        let f = Graph::empty(1).join(&Graph::path(4));
        assert_eq!((f.n(), f.edge_count()), (5, 7));
        let star = Graph::empty(1).join(&Graph::empty(4));
        assert_eq!((star.n(), star.edge_count()), (5, 4));
        assert!(star.is_forest());
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(4).degree_sequence(), vec![3, 3, 3, 3]);
        assert_eq!(wheel5().degree_sequence(), vec![4, 3, 3, 3, 3]);
        assert_eq!(Graph::empty(3).degree_sequence(), vec![0, 0, 0]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, [(0, 0)]),
            Err(GraphError::Loop(0))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn remove_vertices_reindexes() {
        let g = wheel5().remove_vertices(&[0]);
        assert_eq!(g, Graph::cycle(4));
        let mut h = Graph::complete(4);
        assert!(h.remove_edge(2, 1));
        assert!(!h.remove_edge(2, 1));
        assert_eq!(h.edge_count(), 5);
    }

    #[test]
    fn components_and_forests() {
        let g = Graph::cycle(3).disjoint_union(&Graph::path(2));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(!g.is_forest());
        assert!(Graph::path(5).is_forest());
    }
}
