#![allow(dead_code)]

use ptl_core::{CyclePattern, Graph, Vertex};
use rand::Rng;

#[allow(unused_imports)]
pub use ptl_core::constructions::random_plane_map;

/// Random permutation of `0..n`.
pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// `ham[s]`: the vertex set `s` carries a spanning cycle of `g`.
fn hamiltonian_sets(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let full = 1usize << n;
    let mut ham = vec![false; full];
    // reach[s][v]: a path from the lowest vertex of s through all of s ends at v.
    let mut reach = vec![0u32; full];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for s in 1..full {
        let low = s.trailing_zeros() as usize;
        let ends = reach[s];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends & (1 << v) == 0 {
                continue;
            }
            for &w in g.neighbors(v) {
                if w > low && s & (1 << w) == 0 {
                    reach[s | 1 << w] |= 1 << w;
                }
            }
            if s.count_ones() >= 3 && g.has_edge(v, low) {
                ham[s] = true;
            }
        }
    }
    ham
}

/// Pattern containment by trying every assignment of disjoint vertex sets to
/// the required cycles. Only for small graphs.
pub fn naive_contains(g: &Graph, p: &CyclePattern) -> bool {
    assert!(g.n() <= 16);
    let ham = hamiltonian_sets(g);
    let mut reqs: Vec<Option<usize>> = p.exact_lengths().iter().map(|&k| Some(k)).collect();
    reqs.extend(std::iter::repeat_n(None, p.wildcard_count()));
    place(&ham, g.n(), &reqs, 0)
}

fn place(ham: &[bool], n: usize, reqs: &[Option<usize>], used: usize) -> bool {
    let Some((first, rest)) = reqs.split_first() else {
        return true;
    };
    let free = ((1usize << n) - 1) & !used;
    let mut s = free;
    while s > 0 {
        let size = s.count_ones() as usize;
        if ham[s] && first.is_none_or(|k| k == size) && place(ham, n, rest, used | s) {
            return true;
        }
        s = (s - 1) & free;
    }
    false
}

/// Patterns exercised by the cross-checks.
pub fn patterns() -> Vec<CyclePattern> {
    ["C3", "C4", "C5", "C6", "C7", "2C3", "C3+C4", "C3+C5", "2C", "3C", "C3+C", "C4+C"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}
