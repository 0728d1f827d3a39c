//! Combinatorial maps on the sphere, stored as rotation systems.
//!
//! Every edge `uv` contributes two darts, `u→v` and `v→u`. The darts leaving a
//! vertex are ordered by its rotation. Faces are orbits of
//! `next(d) = succ(twin(d))`. A [`PlaneMap`] is always connected and of genus
//! zero, so `v − e + f = 2`.

pub mod discharge;
pub mod embed;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

pub use discharge::{discharge_bound, DivergentBound, ExactRational, Rational};
pub use embed::{all_embeddings, embed_planar, is_planar, Embedding, DEFAULT_EMBEDDING_BOUND};

pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("rotation system is disconnected")]
    Disconnected,
    #[error("rotation system has genus {0}, expected a plane map")]
    NotPlane(usize),
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("attachment vertices are not consecutive along the face")]
    NotConsecutive,
    #[error("graph has {n} vertices, embedding enumeration is bounded at {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct PlaneMap {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    offset: Vec<usize>,
    head: Vec<Vertex>,
    tail: Vec<Vertex>,
    twin: Vec<Dart>,
}

/// Face counts by boundary-walk length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceProfile(pub BTreeMap<usize, usize>);

impl FaceProfile {
    pub fn count(&self, len: usize) -> usize {
        self.0.get(&len).copied().unwrap_or(0)
    }

    pub fn faces(&self) -> usize {
        self.0.values().sum()
    }

    /// `Σ i·f_i`, which equals twice the edge count.
    pub fn weighted_sum(&self) -> usize {
        self.0.iter().map(|(len, c)| len * c).sum()
    }
}

/// Face walks of a map, each starting at its smallest dart, ordered by that
/// dart.
#[derive(Debug, Clone)]
pub struct Faces {
    pub walks: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn profile(&self) -> FaceProfile {
        let mut p = BTreeMap::new();
        for w in &self.walks {
            *p.entry(w.len()).or_insert(0) += 1;
        }
        FaceProfile(p)
    }
}

/// A connected component of a rotation system, re-indexed densely.
#[derive(Debug, Clone)]
pub struct Submap {
    pub map: PlaneMap,
    /// `vertices[i]` is the original id of local vertex `i`.
    pub vertices: Vec<Vertex>,
}

/// Number of face orbits of a raw rotation system.
#[cfg(test)]
pub(crate) fn count_faces(rotation: &[Vec<Vertex>]) -> Result<usize, MapError> {
    let darts = DartTable::build(rotation)?;
    let total = darts.head.len();
    let mut seen = vec![false; total];
    let mut faces = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = darts.next(d);
        }
    }
    Ok(faces)
}

struct DartTable {
    offset: Vec<usize>,
    head: Vec<Vertex>,
    tail: Vec<Vertex>,
    twin: Vec<Dart>,
}

impl DartTable {
    fn build(rotation: &[Vec<Vertex>]) -> Result<Self, MapError> {
        let n = rotation.len();
        let mut offset = Vec::with_capacity(n + 1);
        let mut head = Vec::new();
        let mut tail = Vec::new();
        offset.push(0);
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                if w >= n {
                    return Err(MapError::MalformedRotation(format!(
                        "vertex {v} lists neighbor {w} outside 0..{n}"
                    )));
                }
                if w == v {
                    return Err(MapError::MalformedRotation(format!("loop at vertex {v}")));
                }
                head.push(w);
                tail.push(v);
            }
            offset.push(head.len());
        }
        // Sorted (neighbor, dart) lists give twins in O(m log m).
        let mut by_neighbor: Vec<Vec<(Vertex, Dart)>> = (0..n)
            .map(|v| {
                let mut l: Vec<(Vertex, Dart)> =
                    (offset[v]..offset[v + 1]).map(|d| (head[d], d)).collect();
                l.sort_unstable();
                l
            })
            .collect();
        for (v, l) in by_neighbor.iter().enumerate() {
            if l.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(MapError::MalformedRotation(format!(
                    "vertex {v} lists a neighbor twice"
                )));
            }
        }
        let mut twin = vec![usize::MAX; head.len()];
        for d in 0..head.len() {
            let (v, w) = (tail[d], head[d]);
            match by_neighbor[w].binary_search_by_key(&v, |&(x, _)| x) {
                Ok(i) => twin[d] = by_neighbor[w][i].1,
                Err(_) => {
                    return Err(MapError::MalformedRotation(format!(
                        "{v} lists {w} but {w} does not list {v}"
                    )))
                }
            }
        }
        by_neighbor.clear();
        Ok(DartTable {
            offset,
            head,
            tail,
            twin,
        })
    }

    #[cfg(test)]
    fn succ(&self, d: Dart) -> Dart {
        let v = self.tail[d];
        if d + 1 == self.offset[v + 1] {
            self.offset[v]
        } else {
            d + 1
        }
    }

    #[cfg(test)]
    fn next(&self, d: Dart) -> Dart {
        self.succ(self.twin[d])
    }
}

impl PlaneMap {
    /// Builds a map from per-vertex cyclic neighbor orders. Fails unless the
    /// rotation is symmetric, connected and of genus zero.
    pub fn from_rotation(rotation: Vec<Vec<Vertex>>) -> Result<Self, MapError> {
        let n = rotation.len();
        if n == 0 {
            return Err(MapError::MalformedRotation("no vertices".into()));
        }
        let table = DartTable::build(&rotation)?;
        let mut graph = Graph::empty(n);
        for d in 0..table.head.len() {
            if table.tail[d] < table.head[d] {
                graph.try_add_edge(table.tail[d], table.head[d])?;
            }
        }
        if !graph.is_connected() {
            return Err(MapError::Disconnected);
        }
        let map = PlaneMap {
            graph,
            rotation,
            offset: table.offset,
            head: table.head,
            tail: table.tail,
            twin: table.twin,
        };
        let genus = map.genus();
        if genus != 0 {
            return Err(MapError::NotPlane(genus));
        }
        Ok(map)
    }

    /// Splits an arbitrary symmetric rotation system into connected plane
    /// components. Isolated vertices become one-vertex maps.
    pub fn components_of(rotation: &[Vec<Vertex>]) -> Result<Vec<Submap>, MapError> {
        let n = rotation.len();
        let mut g = Graph::empty(n);
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                if w >= n {
                    return Err(MapError::MalformedRotation(format!(
                        "vertex {v} lists neighbor {w} outside 0..{n}"
                    )));
                }
                if v < w && !g.has_edge(v, w) {
                    g.try_add_edge(v, w)?;
                }
            }
        }
        g.components()
            .into_iter()
            .map(|comp| {
                let mut local = vec![usize::MAX; n];
                for (i, &v) in comp.iter().enumerate() {
                    local[v] = i;
                }
                let rot = comp
                    .iter()
                    .map(|&v| rotation[v].iter().map(|&w| local[w]).collect())
                    .collect();
                Ok(Submap {
                    map: PlaneMap::from_rotation(rot)?,
                    vertices: comp,
                })
            })
            .collect()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn dart_count(&self) -> usize {
        self.head.len()
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        self.tail[d]
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.head[d]
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d]
    }

    /// Darts leaving `v` in rotation order.
    pub fn darts_at(&self, v: Vertex) -> std::ops::Range<Dart> {
        self.offset[v]..self.offset[v + 1]
    }

    /// The dart `u→v`, if `uv` is an edge.
    pub fn dart(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        self.rotation[u]
            .iter()
            .position(|&w| w == v)
            .map(|i| self.offset[u] + i)
    }

    pub fn succ(&self, d: Dart) -> Dart {
        let v = self.tail[d];
        if d + 1 == self.offset[v + 1] {
            self.offset[v]
        } else {
            d + 1
        }
    }

    pub fn pred(&self, d: Dart) -> Dart {
        let v = self.tail[d];
        if d == self.offset[v] {
            self.offset[v + 1] - 1
        } else {
            d - 1
        }
    }

    /// Next dart along the face to the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.succ(self.twin[d])
    }

    pub fn faces(&self) -> Faces {
        let total = self.dart_count();
        let mut face_of = vec![usize::MAX; total];
        let mut walks = Vec::new();
        for start in 0..total {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = id;
                walk.push(d);
                d = self.face_next(d);
            }
            walks.push(walk);
        }
        if walks.is_empty() {
            // A lone vertex bounds one face of length zero.
            walks.push(Vec::new());
        }
        Faces { walks, face_of }
    }

    pub fn profile(&self) -> FaceProfile {
        self.faces().profile()
    }

    /// Number of faces whose boundary walk has length 3.
    pub fn f3(&self) -> usize {
        self.profile().count(3)
    }

    /// Tails of the darts of a face walk.
    pub fn walk_vertices(&self, walk: &[Dart]) -> Vec<Vertex> {
        walk.iter().map(|&d| self.tail[d]).collect()
    }

    fn genus(&self) -> usize {
        let f = self.faces().len() as i64;
        let chi = self.n() as i64 - self.edge_count() as i64 + f;
        ((2 - chi) / 2).max(0) as usize
    }

    /// Checks `Σ i·f_i = 2e` and `v − e + f = 2`.
    pub fn euler_certificate(&self) -> bool {
        let p = self.profile();
        let sum_ok = if self.edge_count() == 0 {
            p.weighted_sum() == 0
        } else {
            p.weighted_sum() == 2 * self.edge_count()
        };
        sum_ok && self.n() as i64 - self.edge_count() as i64 + p.faces() as i64 == 2
    }

    /// The mirror image: every rotation reversed.
    pub fn mirror(&self) -> PlaneMap {
        let rot = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        PlaneMap::from_rotation(rot).expect("mirror of a plane map is a plane map")
    }

    /// Applies `perm`, where `perm[v]` is the new id of `v`.
    pub fn relabel(&self, perm: &[Vertex]) -> PlaneMap {
        let mut rot = vec![Vec::new(); self.n()];
        for (v, r) in self.rotation.iter().enumerate() {
            rot[perm[v]] = r.iter().map(|&w| perm[w]).collect();
        }
        PlaneMap::from_rotation(rot).expect("relabeling preserves validity")
    }

    /// Rotation system with `uv` deleted, split into components.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Vec<Submap> {
        let rot: Vec<Vec<Vertex>> = self
            .rotation
            .iter()
            .enumerate()
            .map(|(x, r)| {
                r.iter()
                    .copied()
                    .filter(|&y| !((x == u && y == v) || (x == v && y == u)))
                    .collect()
            })
            .collect();
        PlaneMap::components_of(&rot).expect("deleting an edge keeps genus zero")
    }

    /// Adds a new vertex inside `face`, joined to `attach`, which must be
    /// distinct vertices appearing consecutively along the face walk.
    pub fn insert_vertex_in_face(&self, face: usize, attach: &[Vertex]) -> Result<PlaneMap, MapError> {
        let faces = self.faces();
        let walk = faces.walks.get(face).ok_or(MapError::NoSuchFace(face))?;
        let z = self.n();
        if attach.is_empty() {
            return Err(MapError::NotConsecutive);
        }
        let mut sorted = attach.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(MapError::NotConsecutive);
        }
        let mut rot = self.rotation.clone();
        rot.push(Vec::new());
        if walk.is_empty() {
            if attach != [0] {
                return Err(MapError::NotConsecutive);
            }
            rot[0].push(z);
            rot[z].push(0);
            return PlaneMap::from_rotation(rot);
        }
        let xs = self.walk_vertices(walk);
        let len = xs.len();
        if attach.len() > len {
            return Err(MapError::NotConsecutive);
        }
        let start = (0..len)
            .find(|&s| attach.iter().enumerate().all(|(i, &a)| xs[(s + i) % len] == a))
            .ok_or(MapError::NotConsecutive)?;
        for i in 0..attach.len() {
            let j = (start + i) % len;
            let prev_dart = walk[(j + len - 1) % len];
            let back = self.tail[prev_dart];
            let x = xs[j];
            let pos = rot[x].iter().position(|&w| w == back).unwrap();
            rot[x].insert(pos + 1, z);
        }
        rot[z] = attach.iter().rev().copied().collect();
        PlaneMap::from_rotation(rot)
    }

    /// Adds an edge across `face` between the corners at walk positions `i`
    /// and `j`.
    pub fn insert_chord(&self, face: usize, i: usize, j: usize) -> Result<PlaneMap, MapError> {
        let faces = self.faces();
        let walk = faces.walks.get(face).ok_or(MapError::NoSuchFace(face))?;
        let len = walk.len();
        if i >= len || j >= len || i == j {
            return Err(MapError::NotConsecutive);
        }
        let xs = self.walk_vertices(walk);
        let (a, b) = (xs[i], xs[j]);
        if a == b || self.graph.has_edge(a, b) {
            return Err(MapError::Graph(GraphError::DuplicateEdge(a.min(b), a.max(b))));
        }
        let mut rot = self.rotation.clone();
        for (x, pos, other) in [(a, i, b), (b, j, a)] {
            let back = self.tail[walk[(pos + len - 1) % len]];
            let p = rot[x].iter().position(|&w| w == back).unwrap();
            rot[x].insert(p + 1, other);
        }
        PlaneMap::from_rotation(rot)
    }

    /// Canonical code up to relabeling and reflection.
    pub fn plane_code(&self) -> PlaneCode {
        let mut best: Option<Vec<u32>> = None;
        for start in 0..self.dart_count() {
            for mirrored in [false, true] {
                let code = self.traversal_code(start, mirrored, best.as_deref());
                if let Some(code) = code {
                    best = Some(code);
                }
            }
        }
        let mut words = vec![self.n() as u32, self.edge_count() as u32];
        words.extend(best.unwrap_or_default());
        let mut bytes = Vec::with_capacity(words.len() * 4);
        for w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        PlaneCode(bytes)
    }

    /// Breadth-first relabeling code from `start`. Returns `None` as soon as
    /// the code would exceed `bound`.
    fn traversal_code(&self, start: Dart, mirrored: bool, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        let n = self.n();
        let mut label = vec![0u32; n];
        let mut first = vec![0usize; n];
        let mut next_label = 1;
        let v0 = self.tail[start];
        label[v0] = next_label;
        next_label += 1;
        first[v0] = start;
        let mut queue = VecDeque::from([v0]);
        let mut code = Vec::with_capacity(2 * self.dart_count() + n);
        let mut smaller = false;
        let push = |code: &mut Vec<u32>, x: u32, smaller: &mut bool| -> bool {
            if let (Some(b), false) = (bound, *smaller) {
                let i = code.len();
                match x.cmp(&b[i]) {
                    std::cmp::Ordering::Less => *smaller = true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
            code.push(x);
            true
        };
        while let Some(v) = queue.pop_front() {
            let deg = self.rotation[v].len();
            let mut d = first[v];
            for _ in 0..deg {
                let w = self.head[d];
                if label[w] == 0 {
                    label[w] = next_label;
                    next_label += 1;
                    first[w] = self.twin[d];
                    queue.push_back(w);
                }
                if !push(&mut code, label[w], &mut smaller) {
                    return None;
                }
                d = if mirrored { self.pred(d) } else { self.succ(d) };
            }
            if !push(&mut code, 0, &mut smaller) {
                return None;
            }
        }
        if bound.is_some() && !smaller {
            return None;
        }
        Some(code)
    }
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneMap[")?;
        for (v, r) in self.rotation.iter().enumerate() {
            if v > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}:")?;
            for w in r {
                write!(f, " {w}")?;
            }
        }
        write!(f, "]")
    }
}

/// Byte string identifying a map up to relabeling and reflection.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PlaneCode(Vec<u8>);

impl PlaneCode {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl From<PlaneCode> for String {
    fn from(c: PlaneCode) -> String {
        c.to_hex()
    }
}

impl TryFrom<String> for PlaneCode {
    type Error = hex::FromHexError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        hex::decode(s).map(PlaneCode)
    }
}

impl fmt::Debug for PlaneCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneCode({})", self.to_hex())
    }
}
