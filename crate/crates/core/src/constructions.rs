//! Plane constructions: the C3∪C5 extremal family, wheels, fans and apex
//! joins over linear forests, each with an explicit rotation system.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Vertex;
use crate::plane::PlaneMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{what} needs at least {min} vertices, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("path lengths must be positive")]
    EmptyPath,
}

/// Left apex of the apex constructions.
pub const APEX_U: Vertex = 0;
/// Right apex of the apex constructions.
pub const APEX_V: Vertex = 1;

/// Shape of `K2 ∨ (t·P3 ∪ P_r)` on `n = 3t + r + 2` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub n: usize,
    pub t: usize,
    pub r: usize,
}

impl ExtremalSpec {
    pub fn new(n: usize) -> Result<Self, ConstructionError> {
        if n < 7 {
            return Err(ConstructionError::TooSmall {
                what: "extremal construction",
                min: 7,
                got: n,
            });
        }
        Ok(ExtremalSpec {
            n,
            t: (n - 2) / 3,
            r: (n - 2) % 3,
        })
    }

    pub fn paths(&self) -> Vec<usize> {
        let mut p = vec![3; self.t];
        if self.r > 0 {
            p.push(self.r);
        }
        p
    }

    /// Edge count of the construction, counted part by part.
    pub fn edge_count(&self) -> usize {
        1 + 2 * (self.n - 2) + 2 * self.t + self.r.saturating_sub(1)
    }
}

/// `⌊(8n − 13)/3⌋`.
pub fn extremal_formula(n: usize) -> usize {
    (8 * n - 13) / 3
}

pub fn extremal_c3c5(n: usize) -> Result<PlaneMap, ConstructionError> {
    let spec = ExtremalSpec::new(n)?;
    apex2_over_linear_forest(&spec.paths(), true)
}

/// Apices `u = 0`, `v = 1` joined to disjoint paths `paths[0], paths[1], …`
/// whose vertices are numbered from 2 on in order.
///
/// The path vertices are drawn as one column between the apices, paths
/// stacked top to bottom, and `uv` (when present) arcs over the top.
pub fn apex2_over_linear_forest(paths: &[usize], with_apex_edge: bool) -> Result<PlaneMap, ConstructionError> {
    if paths.contains(&0) {
        return Err(ConstructionError::EmptyPath);
    }
    let total: usize = paths.iter().sum();
    if total == 0 {
        return Err(ConstructionError::TooSmall {
            what: "apex construction",
            min: 3,
            got: 2,
        });
    }
    // Column position i holds vertex 2 + i; `up[i]`/`down[i]` say whether it
    // has a path neighbor above or below.
    let mut up = Vec::with_capacity(total);
    let mut down = Vec::with_capacity(total);
    for &len in paths {
        for j in 0..len {
            up.push(j > 0);
            down.push(j + 1 < len);
        }
    }
    let p = |i: usize| 2 + i;
    let mut rot = vec![Vec::new(); total + 2];
    rot[APEX_U] = (0..total).rev().map(p).collect();
    if with_apex_edge {
        rot[APEX_U].push(APEX_V);
        rot[APEX_V].push(APEX_U);
    }
    rot[APEX_V].extend((0..total).map(p));
    for i in 0..total {
        let r = &mut rot[p(i)];
        r.push(APEX_V);
        if up[i] {
            r.push(p(i - 1));
        }
        r.push(APEX_U);
        if down[i] {
            r.push(p(i + 1));
        }
    }
    Ok(PlaneMap::from_rotation(rot).expect("apex column layout is plane"))
}

/// `W_k = K1 ∨ C_{k−1}`: hub 0, rim 1..k−1 counterclockwise.
pub fn wheel(k: usize) -> Result<PlaneMap, ConstructionError> {
    if k < 4 {
        return Err(ConstructionError::TooSmall { what: "wheel", min: 4, got: k });
    }
    Ok(hub_over_rim(k, true))
}

/// `F_k = K1 ∨ P_{k−1}`: hub 0, path 1..k−1.
pub fn fan(k: usize) -> Result<PlaneMap, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::TooSmall { what: "fan", min: 3, got: k });
    }
    Ok(hub_over_rim(k, false))
}

fn hub_over_rim(k: usize, closed: bool) -> PlaneMap {
    let rim = k - 1;
    let mut rot = vec![(1..k).collect::<Vec<_>>()];
    for i in 1..k {
        let next = if i == rim { 1 } else { i + 1 };
        let prev = if i == 1 { rim } else { i - 1 };
        let mut r = Vec::with_capacity(3);
        if closed || i < rim {
            r.push(next);
        }
        r.push(0);
        if closed || i > 1 {
            r.push(prev);
        }
        rot.push(r);
    }
    PlaneMap::from_rotation(rot).expect("hub layout is plane")
}

/// A connected plane map on `n ≥ 2` vertices grown from one edge by random
/// vertex insertions and chords. Deterministic in `seed`.
pub fn random_plane_map(seed: u64, n: usize) -> PlaneMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = PlaneMap::from_rotation(vec![vec![1], vec![0]]).expect("an edge is a plane map");
    let chord_rate = rng.gen_range(0.0..0.8);
    let mut stalls = 0;
    while m.n() < n || (rng.gen_bool(chord_rate) && stalls < 20) {
        let faces = m.faces();
        let f = rng.gen_range(0..faces.len());
        let xs = m.walk_vertices(&faces.walks[f]);
        let len = xs.len();
        let next = if m.n() >= n || rng.gen_bool(chord_rate / 2.0) {
            m.insert_chord(f, rng.gen_range(0..len), rng.gen_range(0..len))
        } else {
            let start = rng.gen_range(0..len);
            let take = rng.gen_range(1..=len.min(4));
            let attach: Vec<Vertex> = (0..take).map(|i| xs[(start + i) % len]).collect();
            m.insert_vertex_in_face(f, &attach)
        };
        match next {
            Ok(bigger) => {
                m = bigger;
                stalls = 0;
            }
            // Repeated corners or existing chords; draw again.
            Err(_) => stalls += 1,
        }
        if stalls > 50 {
            break;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::Graph;

    #[test]
    fn extremal_edge_counts() {
        for (n, e) in [(14, 33), (15, 35), (16, 38)] {
            let m = extremal_c3c5(n).unwrap();
            assert_eq!(m.edge_count(), e);
            assert_eq!(extremal_formula(n), e);
            assert!(m.euler_certificate());
        }
        assert!(extremal_c3c5(6).is_err());
    }

    #[test]
    fn spec_counts_match_formula() {
        for n in 7..3000 {
            let s = ExtremalSpec::new(n).unwrap();
            assert_eq!(3 * s.t + s.r + 2, n);
            assert_eq!(s.edge_count(), extremal_formula(n), "n = {n}");
        }
    }

    #[test]
    fn matches_abstract_join() {
        for n in 7..16 {
            let s = ExtremalSpec::new(n).unwrap();
            let mut forest = Graph::empty(0);
            for len in s.paths() {
                forest = forest.disjoint_union(&Graph::path(len));
            }
            let g = Graph::complete(2).join(&forest);
            assert!(is_isomorphic(extremal_c3c5(n).unwrap().graph(), &g));
        }
    }

    #[test]
    fn wheels_and_fans() {
        let w = wheel(5).unwrap();
        assert_eq!((w.edge_count(), w.f3()), (8, 4));
        let f = fan(6).unwrap();
        assert_eq!((f.edge_count(), f.f3()), (9, 4));
        let t = fan(3).unwrap();
        assert!(is_isomorphic(t.graph(), &Graph::complete(3)));
        for k in 4..30 {
            assert_eq!(wheel(k).unwrap().edge_count(), 2 * (k - 1));
            assert_eq!(fan(k).unwrap().edge_count(), 2 * k - 3);
        }
        assert!(wheel(3).is_err());
        assert!(fan(2).is_err());
    }

    #[test]
    fn apex_examples() {
        let m = apex2_over_linear_forest(&[3], true).unwrap();
        assert_eq!(m.edge_count(), 9);
        let m = apex2_over_linear_forest(&[1], true).unwrap();
        assert!(is_isomorphic(m.graph(), &Graph::complete(3)));
        let m = apex2_over_linear_forest(&[3, 3, 3, 3], true).unwrap();
        assert_eq!(m.plane_code(), extremal_c3c5(14).unwrap().plane_code());
        let m = apex2_over_linear_forest(&[2, 1, 3], false).unwrap();
        assert_eq!(m.edge_count(), 12 + 3);
        assert!(m.euler_certificate());
        assert_eq!(apex2_over_linear_forest(&[2, 0], true).unwrap_err(), ConstructionError::EmptyPath);
    }
}
