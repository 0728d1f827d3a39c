//! Planarity testing with rotation-system certificates, and exhaustive
//! enumeration of the plane embeddings of small graphs.
//!
//! Planarity uses the Demoucron–Malgrange–Pertuiset path-addition method on
//! each biconnected block; block embeddings are glued at cut vertices by
//! concatenating their rotations.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex};

use super::{MapError, PlaneCode, PlaneMap};

pub const DEFAULT_EMBEDDING_BOUND: usize = 8;

#[derive(Debug, Clone)]
pub enum Embedding {
    Planar(PlaneMap),
    NonPlanar,
}

impl Embedding {
    pub fn is_planar(&self) -> bool {
        matches!(self, Embedding::Planar(_))
    }

    pub fn map(self) -> Option<PlaneMap> {
        match self {
            Embedding::Planar(m) => Some(m),
            Embedding::NonPlanar => None,
        }
    }
}

/// Edge sets of the biconnected blocks of `g`. Isolated vertices are skipped.
pub(crate) fn biconnected_blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks = Vec::new();
    // (vertex, parent, next neighbor index)
    let mut frames: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, UNSEEN, 0));
        while let Some(&mut (v, parent, ref mut i)) = frames.last_mut() {
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Dense bitset sized for one vertex universe.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
}

struct Fragment {
    attachments: Vec<usize>,
    /// A path between two distinct attachments through the fragment.
    path: Vec<usize>,
}

/// Embeds one biconnected block with at least 3 vertices, returning local
/// rotations, or `None` when it is not planar.
fn embed_biconnected(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let k = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if k >= 3 && m > 3 * k - 6 {
        return None;
    }
    let cycle = find_cycle(adj);
    let mut in_h = vec![false; k];
    let mut edge_in_h: Vec<Vec<bool>> = adj.iter().map(|ns| vec![false; ns.len()]).collect();
    let mark_edge = |edge_in_h: &mut Vec<Vec<bool>>, a: usize, b: usize| {
        let i = adj[a].iter().position(|&x| x == b).unwrap();
        edge_in_h[a][i] = true;
        let j = adj[b].iter().position(|&x| x == a).unwrap();
        edge_in_h[b][j] = true;
    };
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        mark_edge(&mut edge_in_h, v, cycle[(i + 1) % cycle.len()]);
    }
    let mut h_edges = cycle.len();
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut members: Vec<Bits> = faces
        .iter()
        .map(|f| {
            let mut b = Bits::new(k);
            for &v in f {
                b.set(v);
            }
            b
        })
        .collect();

    while h_edges < m {
        let fragments = fragments(adj, &in_h, &edge_in_h);
        let mut choice: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let mut count = 0;
            let mut first = usize::MAX;
            for (face, mem) in members.iter().enumerate() {
                if frag.attachments.iter().all(|&a| mem.get(a)) {
                    if count == 0 {
                        first = face;
                    }
                    count += 1;
                }
            }
            if count == 0 {
                return None;
            }
            if choice.is_none_or(|(c, _, _)| count < c) {
                choice = Some((count, fi, first));
                if count == 1 {
                    break;
                }
            }
        }
        let (_, fi, face) = choice.expect("missing edges imply a fragment");
        let path = &fragments[fi].path;
        let (a, b) = (path[0], *path.last().unwrap());
        let interior = &path[1..path.len() - 1];
        let f = &faces[face];
        let len = f.len();
        let i = f.iter().position(|&x| x == a).unwrap();
        let j = f.iter().position(|&x| x == b).unwrap();
        let mut f1: Vec<usize> = (0..len).map(|t| f[(i + t) % len]).take((j + len - i) % len + 1).collect();
        f1.extend(interior.iter().rev());
        let mut f2: Vec<usize> = (0..len).map(|t| f[(j + t) % len]).take((i + len - j) % len + 1).collect();
        f2.extend(interior.iter());
        for w in path.windows(2) {
            mark_edge(&mut edge_in_h, w[0], w[1]);
            h_edges += 1;
        }
        for &v in interior {
            in_h[v] = true;
        }
        let to_bits = |f: &[usize]| {
            let mut b = Bits::new(k);
            for &v in f {
                b.set(v);
            }
            b
        };
        members[face] = to_bits(&f1);
        members.push(to_bits(&f2));
        faces[face] = f1;
        faces.push(f2);
    }
    Some(rotation_from_faces(k, &faces))
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < adj[v].len() {
            let w = adj[v][*i];
            *i += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
        } else {
            stack.pop();
        }
    }
    unreachable!("biconnected block with three or more vertices has a cycle")
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], edge_in_h: &[Vec<bool>]) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for a in 0..k {
        if !in_h[a] {
            continue;
        }
        for (i, &b) in adj[a].iter().enumerate() {
            if a < b && in_h[b] && !edge_in_h[a][i] {
                out.push(Fragment {
                    attachments: vec![a, b],
                    path: vec![a, b],
                });
            }
        }
    }
    let mut comp = vec![usize::MAX; k];
    for s in 0..k {
        if in_h[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = s;
        comp[s] = id;
        let mut members = vec![s];
        let mut idx = 0;
        let mut attachments = Vec::new();
        while idx < members.len() {
            let v = members[idx];
            idx += 1;
            for &w in &adj[v] {
                if in_h[w] {
                    attachments.push(w);
                } else if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        // Path: attachment a, then through the component to a second attachment.
        let a = attachments[0];
        let mut prev = vec![usize::MAX; k];
        let mut queue = std::collections::VecDeque::new();
        for &w in &adj[a] {
            if !in_h[w] && comp[w] == id && prev[w] == usize::MAX {
                prev[w] = a;
                queue.push_back(w);
            }
        }
        let mut path = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if in_h[w] && w != a {
                    let mut p = vec![w, v];
                    let mut x = v;
                    while prev[x] != a {
                        x = prev[x];
                        p.push(x);
                    }
                    p.push(a);
                    p.reverse();
                    path = Some(p);
                    break 'bfs;
                }
                if !in_h[w] && prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            attachments,
            path: path.expect("fragments of a biconnected block have two attachments"),
        });
    }
    out
}

/// Rotations from consistently oriented face cycles: the face walk
/// `w → x → y` means `y` follows `w` in the rotation at `x`.
fn rotation_from_faces(k: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for f in faces {
        let len = f.len();
        for t in 0..len {
            let (w, x, y) = (f[t], f[(t + 1) % len], f[(t + 2) % len]);
            succ[x].push((w, y));
        }
    }
    succ.into_iter()
        .map(|mut pairs| {
            pairs.sort_unstable();
            let mut rot = Vec::with_capacity(pairs.len());
            let Some(&(start, _)) = pairs.first() else {
                return rot;
            };
            let mut cur = start;
            loop {
                rot.push(cur);
                let i = pairs.binary_search_by_key(&cur, |&(a, _)| a).unwrap();
                cur = pairs[i].1;
                if cur == start {
                    break;
                }
            }
            rot
        })
        .collect()
}

/// Rotation system for any planar graph (possibly disconnected), or `None`.
pub(crate) fn planar_rotation(g: &Graph) -> Option<Vec<Vec<Vertex>>> {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        if block.len() == 1 {
            let (a, b) = block[0];
            rotation[a].push(b);
            rotation[b].push(a);
            continue;
        }
        let mut verts: Vec<Vertex> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |v: Vertex| verts.binary_search(&v).unwrap();
        let mut adj = vec![Vec::new(); verts.len()];
        for &(a, b) in &block {
            adj[local(a)].push(local(b));
            adj[local(b)].push(local(a));
        }
        let rot = embed_biconnected(&adj)?;
        for (i, r) in rot.into_iter().enumerate() {
            rotation[verts[i]].extend(r.into_iter().map(|j| verts[j]));
        }
    }
    Some(rotation)
}

pub fn is_planar(g: &Graph) -> bool {
    planar_rotation(g).is_some()
}

/// A plane embedding of a connected graph, or the non-planar verdict.
pub fn embed_planar(g: &Graph) -> Result<Embedding, MapError> {
    if !g.is_connected() || g.n() == 0 {
        return Err(MapError::Disconnected);
    }
    Ok(match planar_rotation(g) {
        Some(rot) => Embedding::Planar(PlaneMap::from_rotation(rot)?),
        None => Embedding::NonPlanar,
    })
}

struct EmbeddingSearch<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    /// Candidate cyclic orders per vertex, each given as a successor table
    /// over sorted-neighbor indices.
    choices: Vec<Vec<Vec<usize>>>,
    chosen: Vec<Option<usize>>,
    offset: Vec<usize>,
    target_faces: usize,
    found: BTreeMap<PlaneCode, PlaneMap>,
}

impl EmbeddingSearch<'_> {
    fn dart(&self, x: Vertex, idx: usize) -> usize {
        self.offset[x] + idx
    }

    /// Determined successor along the face of dart `d`, if any.
    fn next(&self, d: usize, tails: &[Vertex], heads: &[Vertex]) -> Option<usize> {
        let (x, y) = (tails[d], heads[d]);
        let c = self.chosen[y]?;
        let xi = self.g.neighbors(y).binary_search(&x).unwrap();
        Some(self.dart(y, self.choices[y][c][xi]))
    }

    /// Upper bound on the final face count given the assignment so far.
    fn face_bound(&self, tails: &[Vertex], heads: &[Vertex]) -> usize {
        let total = tails.len();
        let next: Vec<Option<usize>> = (0..total).map(|d| self.next(d, tails, heads)).collect();
        let mut has_pred = vec![false; total];
        for &nd in next.iter().flatten() {
            has_pred[nd] = true;
        }
        let mut seen = vec![false; total];
        let (mut long, mut short) = (0, 0);
        for (start, _) in has_pred.iter().enumerate().filter(|(_, &p)| !p) {
            let mut len = 0;
            let mut d = Some(start);
            while let Some(x) = d {
                seen[x] = true;
                len += 1;
                d = next[x];
            }
            if len >= 3 {
                long += 1;
            } else {
                short += len;
            }
        }
        let mut closed = 0;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            closed += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = next[d].expect("undetermined darts start chains");
            }
        }
        closed + long + short / 3
    }

    fn run(&mut self, level: usize, tails: &[Vertex], heads: &[Vertex]) {
        if level > 0 && self.face_bound(tails, heads) < self.target_faces {
            return;
        }
        if level == self.order.len() {
            let rotation: Vec<Vec<Vertex>> = (0..self.g.n())
                .map(|v| {
                    let ns = self.g.neighbors(v);
                    let table = &self.choices[v][self.chosen[v].unwrap()];
                    let mut rot = Vec::with_capacity(ns.len());
                    let mut i = 0;
                    for _ in 0..ns.len() {
                        rot.push(ns[i]);
                        i = table[i];
                    }
                    rot
                })
                .collect();
            let map = PlaneMap::from_rotation(rotation).expect("face count matches a plane map");
            self.found.entry(map.plane_code()).or_insert(map);
            return;
        }
        let v = self.order[level];
        for c in 0..self.choices[v].len() {
            self.chosen[v] = Some(c);
            self.run(level + 1, tails, heads);
        }
        self.chosen[v] = None;
    }
}

fn cyclic_orders(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    // Permutations of 1..d after a fixed leading 0.
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..d).collect();
    permute(&mut rest, 0, &mut out);
    out.into_iter()
        .map(|perm| {
            let mut cyc = vec![0];
            cyc.extend(perm);
            let mut table = vec![0; d];
            for t in 0..d {
                table[cyc[t]] = cyc[(t + 1) % d];
            }
            table
        })
        .collect()
}

/// Every plane embedding of a connected graph on at most `bound` vertices,
/// one per plane-isomorphism class, sorted by [`PlaneCode`].
pub fn all_embeddings(g: &Graph, bound: usize) -> Result<Vec<PlaneMap>, MapError> {
    let n = g.n();
    if n > bound {
        return Err(MapError::BoundExceeded { n, bound });
    }
    if n == 0 || !g.is_connected() {
        return Err(MapError::Disconnected);
    }
    let m = g.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return Ok(Vec::new());
    }
    if n <= 2 {
        let rot = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        return Ok(vec![PlaneMap::from_rotation(rot)?]);
    }
    let start = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    let mut offset = vec![0];
    let mut tails = Vec::new();
    let mut heads = Vec::new();
    for v in 0..n {
        for &w in g.neighbors(v) {
            tails.push(v);
            heads.push(w);
        }
        offset.push(tails.len());
    }
    let mut search = EmbeddingSearch {
        g,
        order,
        choices: (0..n).map(|v| cyclic_orders(g.degree(v))).collect(),
        chosen: vec![None; n],
        offset,
        target_faces: 2 + m - n,
        found: BTreeMap::new(),
    };
    search.run(0, &tails, &heads);
    Ok(search.found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel5() -> Graph {
        Graph::empty(1).join(&Graph::cycle(4))
    }

    #[test]
    fn k5_is_not_planar() {
        assert!(!is_planar(&Graph::complete(5)));
        assert!(matches!(embed_planar(&Graph::complete(5)), Ok(Embedding::NonPlanar)));
    }

    #[test]
    fn k33_is_not_planar() {
        let k33 = Graph::empty(3).join(&Graph::empty(3));
        assert!(!is_planar(&k33));
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        let m = embed_planar(&Graph::complete(4)).unwrap().map().unwrap();
        assert_eq!(m.faces().len(), 4);
        assert!(m.euler_certificate());
    }

    #[test]
    fn apex_join_of_two_paths_embeds() {
        let forest = Graph::path(3).disjoint_union(&Graph::path(3));
        let g = Graph::complete(2).join(&forest);
        let m = embed_planar(&g).unwrap().map().unwrap();
        assert_eq!(m.n(), 8);
        assert!(m.euler_certificate());
    }

    #[test]
    fn cut_vertices_glue() {
        // Two triangles sharing a vertex, plus a pendant path.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4), (4, 5), (5, 6)]).unwrap();
        let m = embed_planar(&g).unwrap().map().unwrap();
        assert!(m.euler_certificate());
        assert_eq!(m.f3(), 2);
    }

    #[test]
    fn k4_and_c4_have_one_embedding_class() {
        assert_eq!(all_embeddings(&Graph::complete(4), 8).unwrap().len(), 1);
        assert_eq!(all_embeddings(&Graph::cycle(4), 8).unwrap().len(), 1);
    }

    #[test]
    fn wheel_with_ear_has_inequivalent_embeddings() {
        // W5 plus a vertex joined to two adjacent rim vertices.
        let mut g = wheel5();
        let z = g.add_vertex();
        g.add_edge(z, 1);
        g.add_edge(z, 2);
        let maps = all_embeddings(&g, 8).unwrap();
        assert!(maps.len() >= 2);
        let mut profiles: Vec<_> = maps.iter().map(|m| m.profile()).collect();
        profiles.dedup();
        assert!(profiles.len() >= 2);
        for m in &maps {
            assert!(m.euler_certificate());
        }
    }

    #[test]
    fn bound_and_nonplanar() {
        assert!(matches!(
            all_embeddings(&Graph::cycle(9), 8),
            Err(MapError::BoundExceeded { n: 9, bound: 8 })
        ));
        assert!(all_embeddings(&Graph::complete(5), 8).unwrap().is_empty());
        let k33 = Graph::empty(3).join(&Graph::empty(3));
        assert!(all_embeddings(&k33, 8).unwrap().is_empty());
    }

    #[test]
    fn brute_force_k4_count() {
        // Among all 2^4 rotation systems of K4 exactly the two mirror images
        // are planar.
        let g = Graph::complete(4);
        let mut planar = 0;
        for mask in 0..16u32 {
            let rot: Vec<Vec<usize>> = (0..4)
                .map(|v| {
                    let mut ns: Vec<usize> = g.neighbors(v).to_vec();
                    if mask & (1 << v) != 0 {
                        ns.swap(1, 2);
                    }
                    ns
                })
                .collect();
            if super::super::count_faces(&rot).unwrap() == 4 {
                planar += 1;
            }
        }
        assert_eq!(planar, 2);
    }
}
