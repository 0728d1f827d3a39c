mod common;

use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;
use ptl_core::oracle::{generate_graphs, Filters};
use ptl_core::plane::{all_embeddings, discharge_bound, DEFAULT_EMBEDDING_BOUND};
use ptl_core::{canonical_code, embed_planar, is_isomorphic, Graph, Vertex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_graphs(n: usize) -> Vec<Graph> {
    generate_graphs(n, &Filters::default()).unwrap()
}

fn for_each_perm(n: usize, f: &mut impl FnMut(&[Vertex])) {
    fn rec(p: &mut Vec<Vertex>, k: usize, f: &mut impl FnMut(&[Vertex])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, f);
            p.swap(k, i);
        }
    }
    rec(&mut (0..n).collect(), 0, f)
}

/// Smallest upper-triangle bit string over all relabelings.
fn brute_key(g: &Graph) -> Vec<bool> {
    let mut best: Option<Vec<bool>> = None;
    for_each_perm(g.n(), &mut |p| {
        let h = g.relabel(p);
        let bits: Vec<bool> = (0..h.n()).flat_map(|u| (u + 1..h.n()).map(move |v| (u, v))).map(|(u, v)| h.has_edge(u, v)).collect();
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
    });
    best.unwrap_or_default()
}

#[test]
fn canonical_codes_agree_with_permutation_search() {
    for n in 1..=6 {
        let graphs = all_graphs(n);
        let keys: BTreeSet<Vec<bool>> = graphs.iter().map(brute_key).collect();
        let codes: BTreeSet<_> = graphs.iter().map(canonical_code).collect();
        assert_eq!(keys.len(), graphs.len(), "generator repeats a class at n = {n}");
        assert_eq!(codes.len(), graphs.len(), "codes merge classes at n = {n}");
    }
    let five = all_graphs(5);
    for a in &five {
        for b in &five {
            assert_eq!(is_isomorphic(a, b), brute_key(a) == brute_key(b));
        }
    }
}

#[test]
fn codes_decode_to_isomorphic_graphs() {
    for g in all_graphs(6) {
        let c = canonical_code(&g);
        let back = c.decode();
        assert!(is_isomorphic(&g, &back));
        assert_eq!(canonical_code(&back), c);
    }
}

proptest! {
    #[test]
    fn codes_ignore_labels(seed in any::<u64>(), n in 2usize..14) {
        let m = common::random_plane_map(seed, n);
        let g = m.graph();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let perm = common::random_perm(&mut rng, g.n());
        prop_assert_eq!(canonical_code(g), canonical_code(&g.relabel(&perm)));
        let pm = m.relabel(&perm);
        prop_assert_eq!(m.plane_code(), pm.plane_code());
        prop_assert_eq!(m.plane_code(), m.mirror().plane_code());
    }

    #[test]
    fn join_sizes(a in 0usize..7, b in 0usize..7) {
        let (x, y) = (Graph::path(a), Graph::cycle(b.max(3)));
        let j = x.join(&y);
        prop_assert_eq!(j.n(), x.n() + y.n());
        prop_assert_eq!(j.edge_count(), x.edge_count() + y.edge_count() + x.n() * y.n());
    }

    #[test]
    fn insertion_keeps_genus_zero(seed in any::<u64>(), n in 2usize..20) {
        let m = common::random_plane_map(seed, n);
        prop_assert!(m.euler_certificate());
        let p = m.profile();
        prop_assert_eq!(p.weighted_sum(), 2 * m.edge_count());
    }
}

#[test]
fn planarity_matches_embedding_enumeration() {
    for n in 1..=7 {
        for g in all_graphs(n).into_iter().filter(Graph::is_connected) {
            let all = all_embeddings(&g, DEFAULT_EMBEDDING_BOUND).unwrap();
            match embed_planar(&g).unwrap().map() {
                Some(m) => {
                    assert!(m.euler_certificate());
                    assert_eq!(m.graph(), &g);
                    assert!(all.iter().any(|x| x.plane_code() == m.plane_code()), "{g:?}");
                }
                None => assert!(all.is_empty(), "{g:?}"),
            }
        }
    }
}

#[test]
fn half_triangle_cap_is_below_the_formula() {
    for n in 1..=5000i128 {
        let b = discharge_bound(n, Ratio::new(1, 2), Ratio::from_integer(0)).unwrap();
        assert!(b < Ratio::new(8 * n - 13, 3), "n = {n}");
    }
}
