mod common;

use ptl_core::cycles::{cycles_of_length, triangles};
use ptl_core::oracle::{generate_graphs, Filters};
use ptl_core::{find_pattern, is_free, CyclePattern, Graph};

fn all_graphs(n: usize) -> Vec<Graph> {
    generate_graphs(n, &Filters::default()).unwrap()
}

#[test]
fn detector_agrees_with_naive_up_to_seven() {
    let patterns = common::patterns();
    for n in 0..=7 {
        for g in all_graphs(n) {
            for p in &patterns {
                let found = find_pattern(&g, p);
                assert_eq!(found.is_some(), common::naive_contains(&g, p), "{p} on {g:?}");
                if let Some(w) = found {
                    assert!(w.validate(&g) && w.matches(p), "{p} witness {w:?} on {g:?}");
                }
            }
        }
    }
}

#[test]
fn detector_agrees_with_naive_on_eight() {
    let patterns: Vec<CyclePattern> = ["2C3", "C3+C5", "2C4", "2C"].iter().map(|s| s.parse().unwrap()).collect();
    for g in all_graphs(8) {
        for p in &patterns {
            assert_eq!(is_free(&g, p), !common::naive_contains(&g, p), "{p} on {g:?}");
        }
    }
}

#[test]
fn containment_survives_edge_addition() {
    let patterns = common::patterns();
    for g in all_graphs(6) {
        for p in &patterns {
            if is_free(&g, p) {
                continue;
            }
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge(u, v);
                        assert!(!is_free(&h, p), "{p}: adding {u}{v} to {g:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn cycle_listing_matches_hamiltonian_subsets() {
    for g in all_graphs(6) {
        let tri = triangles(&g).len();
        assert_eq!(tri, cycles_of_length(&g, 3).len());
        for k in 3..=6 {
            for c in cycles_of_length(&g, k) {
                assert_eq!(c.len(), k);
                for i in 0..k {
                    assert!(g.has_edge(c[i], c[(i + 1) % k]));
                }
            }
        }
    }
}
