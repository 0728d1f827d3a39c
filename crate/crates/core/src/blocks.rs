//! Triangular blocks: the classes of edges connected through shared 3-faces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog;
use crate::cycles::cycles_of_length;
use crate::graph::{Graph, Vertex};
use crate::plane::{Dart, PlaneCode, PlaneMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("block has {0} vertices, goodness needs at least 6")]
    TooSmall(usize),
}

#[derive(Debug, Clone)]
pub struct TriBlock {
    /// Host edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
    /// Host vertex ids, sorted. Local vertex `i` of `sub_map` is `vertices[i]`.
    pub vertices: Vec<Vertex>,
    /// Host 3-faces whose edges belong to this block.
    pub f3_in_host: usize,
    /// The host rotation restricted to the block's edges.
    pub sub_map: PlaneMap,
}

/// A face of length at least 4 in a block's own map, in host ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hole {
    pub walk: Vec<Vertex>,
}

impl Hole {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClass {
    pub code: PlaneCode,
    pub vertices: usize,
    pub edges: usize,
    pub f3: usize,
    /// Catalog alias, or `large` for blocks beyond the catalog.
    pub alias: String,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the edges of `m` into triangular blocks, ordered by smallest edge.
pub fn decompose(m: &PlaneMap) -> Vec<TriBlock> {
    let darts = m.dart_count();
    // Number edges by their lower dart.
    let mut edge_of = vec![usize::MAX; darts];
    let mut ends = Vec::with_capacity(darts / 2);
    for d in 0..darts {
        if edge_of[d] == usize::MAX {
            let (a, b) = (m.tail(d), m.head(d));
            edge_of[d] = ends.len();
            edge_of[m.twin(d)] = ends.len();
            ends.push((a.min(b), a.max(b)));
        }
    }
    let mut parent: Vec<usize> = (0..ends.len()).collect();
    let faces = m.faces();
    let triangles: Vec<&Vec<Dart>> = faces.walks.iter().filter(|w| w.len() == 3).collect();
    for w in &triangles {
        let r0 = find(&mut parent, edge_of[w[0]]);
        for &d in &w[1..] {
            let r = find(&mut parent, edge_of[d]);
            parent[r] = r0;
        }
    }
    let mut roots: Vec<usize> = (0..ends.len()).map(|e| find(&mut parent, e)).collect();
    // Dense block ids in order of smallest edge.
    let mut order: Vec<usize> = (0..ends.len()).collect();
    order.sort_by_key(|&e| ends[e]);
    let mut block_of_root = vec![usize::MAX; ends.len()];
    let mut next = 0;
    for &e in &order {
        let r = roots[e];
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = next;
            next += 1;
        }
    }
    for r in roots.iter_mut() {
        *r = block_of_root[*r];
    }
    let block_of_edge = roots;

    let mut edges = vec![Vec::new(); next];
    for &e in &order {
        edges[block_of_edge[e]].push(ends[e]);
    }
    let mut f3 = vec![0; next];
    for w in &triangles {
        f3[block_of_edge[edge_of[w[0]]]] += 1;
    }
    edges
        .into_iter()
        .zip(f3)
        .enumerate()
        .map(|(b, (edges, f3_in_host))| {
            let mut vertices: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let local = |x: Vertex| vertices.binary_search(&x).unwrap();
            let rotation = vertices
                .iter()
                .map(|&x| {
                    m.darts_at(x)
                        .filter(|&d| block_of_edge[edge_of[d]] == b)
                        .map(|d| local(m.head(d)))
                        .collect()
                })
                .collect();
            let sub_map = PlaneMap::from_rotation(rotation).expect("a block of a plane map is a connected plane map");
            TriBlock {
                edges,
                vertices,
                f3_in_host,
                sub_map,
            }
        })
        .collect()
}

/// Whether block sizes and 3-face counts add up to those of the host.
pub fn partition_identities(m: &PlaneMap, blocks: &[TriBlock]) -> bool {
    blocks.iter().map(|b| b.edges.len()).sum::<usize>() == m.edge_count()
        && blocks.iter().map(|b| b.f3_in_host).sum::<usize>() == m.f3()
}

impl TriBlock {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn graph(&self) -> &Graph {
        self.sub_map.graph()
    }

    pub fn holes(&self) -> Vec<Hole> {
        holes_of(&self.sub_map)
            .into_iter()
            .map(|walk| Hole {
                walk: walk.into_iter().map(|x| self.vertices[x]).collect(),
            })
            .collect()
    }

    /// A nonadjacent pair on a common hole such that every 5-cycle of the
    /// block contains both, in host ids.
    pub fn bad_pair(&self) -> Result<Option<(Vertex, Vertex)>, BlockError> {
        if self.vertex_count() < 6 {
            return Err(BlockError::TooSmall(self.vertex_count()));
        }
        Ok(bad_pair_of(&self.sub_map).map(|(a, b)| (self.vertices[a], self.vertices[b])))
    }

    pub fn is_good(&self) -> Result<bool, BlockError> {
        self.bad_pair().map(|p| p.is_none())
    }

    pub fn classify(&self) -> BlockClass {
        let code = self.sub_map.plane_code();
        let alias = match catalog::lookup(&code) {
            Some(entry) => entry.alias.clone(),
            None => "large".to_string(),
        };
        BlockClass {
            code,
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            f3: self.sub_map.f3(),
            alias,
        }
    }

    pub fn is_wheel(&self) -> bool {
        is_wheel_graph(self.graph())
    }

    pub fn is_fan(&self) -> bool {
        is_fan_graph(self.graph())
    }

    pub fn report(&self) -> BlockReport {
        BlockReport {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            f3: self.f3_in_host,
            alias: self.classify().alias,
            holes: self.holes().iter().map(Hole::len).collect(),
            good: self.is_good().ok(),
            vertex_set: self.vertices.clone(),
        }
    }
}

/// Faces of length at least 4, as vertex walks.
pub(crate) fn holes_of(m: &PlaneMap) -> Vec<Vec<Vertex>> {
    m.faces()
        .walks
        .iter()
        .filter(|w| w.len() >= 4)
        .map(|w| m.walk_vertices(w))
        .collect()
}

pub(crate) fn bad_pair_of(m: &PlaneMap) -> Option<(Vertex, Vertex)> {
    let g = m.graph();
    let five = cycles_of_length(g, 5);
    for hole in holes_of(m) {
        let mut on: Vec<Vertex> = hole.clone();
        on.sort_unstable();
        on.dedup();
        for (i, &a) in on.iter().enumerate() {
            for &b in &on[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let separated = five.iter().any(|c| !(c.contains(&a) && c.contains(&b)));
                if !separated {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

fn hub_candidates(g: &Graph) -> impl Iterator<Item = Vertex> + '_ {
    let n = g.n();
    (0..n).filter(move |&h| g.degree(h) + 1 == n)
}

/// `K1 ∨ C_{n−1}` with `n ≥ 4`.
pub fn is_wheel_graph(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || g.edge_count() != 2 * (n - 1) {
        return false;
    }
    hub_candidates(g).any(|h| {
        let rim = g.remove_vertices(&[h]);
        rim.is_connected() && (0..rim.n()).all(|v| rim.degree(v) == 2)
    })
}

/// `K1 ∨ P_{n−1}` with `n ≥ 3`.
pub fn is_fan_graph(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || g.edge_count() != 2 * n - 3 {
        return false;
    }
    hub_candidates(g).any(|h| {
        let rim = g.remove_vertices(&[h]);
        rim.is_connected() && rim.is_forest() && rim.max_degree() <= 2
    })
}

/// A maximal run of consecutive 3-faces around a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub hub: Vertex,
    /// Neighbors of the hub along the run, in rotation order.
    pub rim: Vec<Vertex>,
    pub triangles: usize,
    /// The run goes all the way around the hub.
    pub closed: bool,
}

/// Partitions the 3-faces at `v` into maximal fans, ordered by first dart.
pub fn fan_partition(m: &PlaneMap, v: Vertex) -> Vec<Fan> {
    let rot = m.rotation(v);
    let d = rot.len();
    if d < 2 {
        return Vec::new();
    }
    let faces = m.faces();
    let base = m.darts_at(v).start;
    // Corner i, between rot[i] and rot[i + 1], lies on the face of the dart
    // rot[i] → v.
    let tri: Vec<bool> = (0..d)
        .map(|i| {
            let into_v = m.twin(base + i);
            faces.walks[faces.face_of_dart(into_v)].len() == 3
        })
        .collect();
    if tri.iter().all(|&t| t) {
        return vec![Fan {
            hub: v,
            rim: rot.to_vec(),
            triangles: d,
            closed: true,
        }];
    }
    let mut fans = Vec::new();
    for start in 0..d {
        if !tri[start] || tri[(start + d - 1) % d] {
            continue;
        }
        let mut rim = vec![rot[start]];
        let mut i = start;
        while tri[i] {
            i = (i + 1) % d;
            rim.push(rot[i]);
        }
        fans.push(Fan {
            hub: v,
            triangles: rim.len() - 1,
            rim,
            closed: false,
        });
    }
    fans
}

/// Blocks through both ends of a (possibly absent) edge once that edge is
/// deleted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairBlocksReport {
    pub u: Vertex,
    pub v: Vertex,
    pub blocks: Vec<PairBlock>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairBlock {
    pub vertex_set: Vec<Vertex>,
    pub edges: usize,
    pub f3: usize,
    pub alias: String,
    pub allowed: bool,
}

impl PairBlocksReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

/// Lists the blocks of `m − uv` containing both `u` and `v`, flagging those
/// whose class is outside [`catalog::pair_block_aliases`].
pub fn check_pair_blocks(m: &PlaneMap, u: Vertex, v: Vertex) -> PairBlocksReport {
    assert_ne!(u, v, "pair must be two distinct vertices");
    let allowed = catalog::pair_block_aliases();
    let mut blocks = Vec::new();
    for part in m.without_edge(u, v) {
        let (Some(lu), Some(lv)) = (
            part.vertices.iter().position(|&x| x == u),
            part.vertices.iter().position(|&x| x == v),
        ) else {
            continue;
        };
        for b in decompose(&part.map) {
            if !(b.contains(lu) && b.contains(lv)) {
                continue;
            }
            let alias = b.classify().alias;
            let mut vertex_set: Vec<Vertex> = b.vertices.iter().map(|&x| part.vertices[x]).collect();
            vertex_set.sort_unstable();
            blocks.push(PairBlock {
                vertex_set,
                edges: b.edge_count(),
                f3: b.f3_in_host,
                allowed: allowed.contains(&alias),
                alias,
            });
        }
    }
    blocks.sort_by(|a, b| a.vertex_set.cmp(&b.vertex_set));
    let violations = blocks.iter().filter(|b| !b.allowed).count();
    PairBlocksReport { u, v, blocks, violations }
}

/// Serialized summary of one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub vertices: usize,
    pub edges: usize,
    pub f3: usize,
    pub alias: String,
    pub holes: Vec<usize>,
    /// `None` below 6 vertices.
    pub good: Option<bool>,
    pub vertex_set: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::plane::embed_planar;

    fn map(rot: Vec<Vec<Vertex>>) -> PlaneMap {
        PlaneMap::from_rotation(rot).unwrap()
    }

    fn embed(g: &Graph) -> PlaneMap {
        embed_planar(g).unwrap().map().unwrap()
    }

    fn wheel(k: usize) -> PlaneMap {
        constructions::wheel(k).unwrap()
    }

    fn fan(k: usize) -> PlaneMap {
        constructions::fan(k).unwrap()
    }

    fn bowtie() -> PlaneMap {
        map(vec![vec![1, 2, 3, 4], vec![2, 0], vec![0, 1], vec![4, 0], vec![0, 3]])
    }

    fn single(m: &PlaneMap) -> TriBlock {
        let mut bs = decompose(m);
        assert_eq!(bs.len(), 1);
        bs.pop().unwrap()
    }

    #[test]
    fn k4_is_one_block() {
        let m = embed(&Graph::complete(4));
        let b = single(&m);
        assert_eq!((b.edge_count(), b.f3_in_host), (6, 4));
        assert!(b.holes().is_empty());
        assert!(partition_identities(&m, &[b]));
    }

    #[test]
    fn bowtie_splits_at_cut_vertex() {
        let m = bowtie();
        let bs = decompose(&m);
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.edge_count() == 3 && b.f3_in_host == 1));
        assert_eq!(bs[0].vertices, vec![0, 1, 2]);
        assert!(partition_identities(&m, &bs));
    }

    #[test]
    fn lone_edges_are_blocks() {
        let m = map(vec![vec![1], vec![0, 2], vec![1]]);
        let bs = decompose(&m);
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.edge_count() == 1 && b.f3_in_host == 0));
    }

    #[test]
    fn holes_of_wheel_and_fan() {
        let w = single(&wheel(5));
        assert_eq!(w.holes().iter().map(Hole::len).collect::<Vec<_>>(), vec![4]);
        let f = single(&fan(5));
        assert_eq!(f.holes().iter().map(Hole::len).collect::<Vec<_>>(), vec![5]);
    }

    #[test]
    fn goodness_of_fans() {
        assert_eq!(single(&fan(7)).is_good(), Ok(true));
        let f6 = single(&fan(6));
        assert_eq!(f6.is_good(), Ok(false));
        // Path 1-2-3-4-5 around hub 0: the pair {2, 4} sits in both 5-cycles.
        assert_eq!(f6.bad_pair().unwrap(), Some((2, 4)));
        assert_eq!(single(&fan(5)).is_good(), Err(BlockError::TooSmall(5)));
    }

    #[test]
    fn octahedron_is_vacuously_good() {
        let mut g = Graph::complete(6);
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            g.remove_edge(a, b);
        }
        let b = single(&embed(&g));
        assert!(b.holes().is_empty());
        assert_eq!(b.is_good(), Ok(true));
        assert!(!b.is_wheel() && !b.is_fan());
    }

    #[test]
    fn recognizers() {
        assert!(single(&wheel(10)).is_wheel());
        assert!(single(&fan(10)).is_fan());
        assert!(!single(&wheel(10)).is_fan());
        assert!(is_fan_graph(&Graph::complete(3)));
        assert!(is_wheel_graph(&Graph::complete(4)));
        assert!(!is_wheel_graph(&Graph::complete(5)));
    }

    #[test]
    fn fan_partitions() {
        let w = wheel(7);
        let hub = (0..w.n()).find(|&v| w.graph().degree(v) == 6).unwrap();
        let p = fan_partition(&w, hub);
        assert_eq!(p.len(), 1);
        assert!(p[0].closed && p[0].triangles == 6);

        let f = fan(7);
        let hub = (0..f.n()).find(|&v| f.graph().degree(v) == 6).unwrap();
        let p = fan_partition(&f, hub);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].triangles, p[0].rim.len(), p[0].closed), (5, 6, false));

        let p = fan_partition(&bowtie(), 0);
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|f| f.triangles == 1));
    }

    #[test]
    fn pair_blocks_absent() {
        let report = check_pair_blocks(&bowtie(), 1, 3);
        assert!(report.blocks.is_empty());
        assert!(report.is_clean());
    }
}
