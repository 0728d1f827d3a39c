use ptl_core::blocks::check_pair_blocks;
use ptl_core::constructions::{extremal_c3c5, extremal_formula, wheel, APEX_U, APEX_V};
use ptl_core::{decompose, is_free, is_planar, CyclePattern, Graph, PlaneMap};

fn c3c5() -> CyclePattern {
    "C3+C5".parse().unwrap()
}

#[test]
fn edge_formula_and_planarity() {
    for n in 7..=2000 {
        let m = extremal_c3c5(n).unwrap();
        assert_eq!(m.n(), n);
        assert_eq!(m.edge_count(), (8 * n - 13) / 3, "n = {n}");
        assert_eq!(m.edge_count(), extremal_formula(n));
        assert!(m.euler_certificate(), "n = {n}");
    }
    assert!(extremal_c3c5(6).is_err());
}

#[test]
fn free_of_triangle_plus_pentagon() {
    let p = c3c5();
    for n in 7..=200 {
        assert!(is_free(extremal_c3c5(n).unwrap().graph(), &p), "n = {n}");
    }
}

#[test]
fn no_edge_can_be_added() {
    let p = c3c5();
    for n in 10..=60 {
        let g = extremal_c3c5(n).unwrap().graph().clone();
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let mut h = g.clone();
                h.add_edge(u, v);
                assert!(!is_free(&h, &p) || !is_planar(&h), "n = {n}: {u}{v} can be added");
            }
        }
    }
}

fn without_apex_edge(m: &PlaneMap) -> PlaneMap {
    let parts = m.without_edge(APEX_U, APEX_V);
    assert_eq!(parts.len(), 1);
    parts.into_iter().next().unwrap().map
}

#[test]
fn blocks_without_apex_edge_are_wheels() {
    let w5 = wheel(5).unwrap().plane_code();
    for n in [14, 17, 20, 23, 50] {
        let blocks = decompose(&without_apex_edge(&extremal_c3c5(n).unwrap()));
        assert_eq!(blocks.len(), (n - 2) / 3, "n = {n}");
        for b in &blocks {
            assert_eq!((b.vertex_count(), b.edge_count(), b.f3_in_host), (5, 8, 4));
            assert_eq!(b.sub_map.plane_code(), w5);
            assert_eq!(b.classify().alias, "wheel5");
        }
    }
}

#[test]
fn apex_pair_blocks_are_listed() {
    let r = check_pair_blocks(&extremal_c3c5(17).unwrap(), APEX_U, APEX_V);
    assert!(r.is_clean());
    assert_eq!(r.blocks.len(), 5);
    // With the apex edge, K2 joined to C5 has 16 > 3·7 − 6 edges and is not
    // planar; the bipyramid is, and its single 7-vertex block is not listed.
    let bipyramid = Graph::empty(2).join(&Graph::cycle(5));
    assert!(ptl_core::embed_planar(&Graph::complete(2).join(&Graph::cycle(5))).unwrap().map().is_none());
    let m = ptl_core::embed_planar(&bipyramid).unwrap().map().unwrap();
    let r = check_pair_blocks(&m, 0, 1);
    assert_eq!((r.blocks.len(), r.violations), (1, 1));
    assert_eq!(r.blocks[0].alias, "large");
}
