//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_FAILURES` still print FAIL but do not fail the
//! process unless `PTL_STRICT` is set.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use ptl_core::blocks::partition_identities;
use ptl_core::constructions::{extremal_c3c5, extremal_formula, wheel, APEX_U, APEX_V};
use ptl_core::oracle::{census, census_threshold, enumerate_blocks, ex_planar, generate_graphs, verify_six_vertex_blocks, Filters};
use ptl_core::plane::Rational;
use ptl_core::{decompose, find_pattern, is_free, CyclePattern, PlaneMap, Vertex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// ex(6, 2C3) is 11, one more than the closed form; see the README.
const KNOWN_FAILURES: &[u32] = &[2];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn pat(s: &str) -> CyclePattern {
    s.parse().unwrap()
}

fn construction() -> Outcome {
    let p = pat("C3+C5");
    for n in 7..=2000 {
        let m = extremal_c3c5(n).map_err(|e| e.to_string())?;
        if !m.euler_certificate() {
            return Err(format!("n = {n}: Euler check failed"));
        }
        if m.edge_count() != (8 * n - 13) / 3 {
            return Err(format!("n = {n}: {} edges", m.edge_count()));
        }
        if !is_free(m.graph(), &p) {
            return Err(format!("n = {n}: contains C3+C5"));
        }
    }
    Ok("n = 7..2000 planar, free, ⌊(8n−13)/3⌋ edges".into())
}

fn two_triangles() -> Outcome {
    let p = pat("2C3");
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [6, 7, 8] {
        let got = ex_planar(n, &p).map_err(|e| e.to_string())?.max_edges;
        let want = (5 * n).div_ceil(2) - 5;
        ok &= got == want;
        parts.push(format!("n={n}: {got} vs {want}"));
    }
    let msg = parts.join(", ");
    if ok {
        Ok(msg)
    } else {
        Err(format!("{msg}; K5−e plus a vertex on two adjacent degree-4 vertices has 11 edges and no two disjoint triangles"))
    }
}

fn three_cycles() -> Outcome {
    let got = ex_planar(9, &pat("3C")).map_err(|e| e.to_string())?.max_edges;
    if got == 21 {
        Ok("ex(9, 3C) = 21".into())
    } else {
        Err(format!("ex(9, 3C) = {got}"))
    }
}

fn lower_bound() -> Outcome {
    let p = pat("C3+C5");
    let mut parts = Vec::new();
    for n in [7, 8, 9] {
        let got = ex_planar(n, &p).map_err(|e| e.to_string())?.max_edges;
        let lb = extremal_formula(n);
        parts.push(format!("n={n}: {got} ≥ {lb}"));
        if got < lb {
            return Err(parts.join(", "));
        }
    }
    Ok(parts.join(", "))
}

fn block_counts() -> Outcome {
    let counts: Vec<usize> = (2..=5).map(|v| enumerate_blocks(v).map(|b| b.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    if counts == [1, 1, 2, 4] {
        Ok(format!("v = 2..5 → {counts:?}"))
    } else {
        Err(format!("v = 2..5 → {counts:?}"))
    }
}

fn six_vertex_blocks() -> Outcome {
    let r = verify_six_vertex_blocks().map_err(|e| e.to_string())?;
    let bad: Vec<String> = r.bad.iter().map(|b| format!("{} (e={}, f3={})", b.alias, b.edges, b.f3)).collect();
    let msg = format!("{} classes, {} good, bad: {}", r.classes, r.good, bad.join(", "));
    if r.pass {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn extremal_blocks() -> Outcome {
    let w5 = wheel(5).map_err(|e| e.to_string())?.plane_code();
    for n in [14, 17, 20] {
        let m = extremal_c3c5(n).map_err(|e| e.to_string())?;
        let parts = m.without_edge(APEX_U, APEX_V);
        let [part] = parts.as_slice() else {
            return Err(format!("n = {n}: removing the apex edge disconnects"));
        };
        let blocks = decompose(&part.map);
        if blocks.len() != (n - 2) / 3 {
            return Err(format!("n = {n}: {} blocks", blocks.len()));
        }
        for b in &blocks {
            if (b.vertex_count(), b.edge_count(), b.f3_in_host) != (5, 8, 4) || b.sub_map.plane_code() != w5 {
                return Err(format!("n = {n}: block {:?} is not wheel5", b.vertices));
            }
        }
    }
    Ok("n = 14, 17, 20 → (n−2)/3 wheel5 blocks".into())
}

fn census_arithmetic() -> Outcome {
    for n in [7u64, 1000, 295659, 295660, 1_000_000] {
        let r = census(n);
        let ni = n as i128;
        let f: Rational = r.f_n.into();
        let pairs: Rational = r.pair_blocks.into();
        if f != Ratio::new(4 * ni + 15097, 15555) {
            return Err(format!("n = {n}: f(n) = {f}"));
        }
        if pairs != Ratio::new(2 * ni - 357994, 77775) {
            return Err(format!("n = {n}: pair blocks = {pairs}"));
        }
        if !r.edge_bound_identity || Rational::from(r.edge_bound) != Ratio::new(8 * ni - 16, 3) {
            return Err(format!("n = {n}: edge bound {}", Rational::from(r.edge_bound)));
        }
    }
    match census_threshold() {
        295660 => Ok("identities exact; threshold n = 295660".into()),
        t => Err(format!("threshold {t}")),
    }
}

fn property_suites() -> Outcome {
    // Partition identities.
    for seed in 0..1000u64 {
        let m = common::random_plane_map(seed, 2 + (seed % 14) as usize);
        if !partition_identities(&m, &decompose(&m)) {
            return Err(format!("partition identities fail for seed {seed}"));
        }
    }
    // Detector against the naive enumerator.
    let patterns = common::patterns();
    let mut graphs = 0;
    for n in 0..=7 {
        for g in generate_graphs(n, &Filters::default()).map_err(|e| e.to_string())? {
            graphs += 1;
            for p in &patterns {
                if find_pattern(&g, p).is_some() != common::naive_contains(&g, p) {
                    return Err(format!("detector disagrees on {p} for {g:?}"));
                }
            }
        }
    }
    // Decomposition under reordered rotations and relabeling.
    for seed in 0..500u64 {
        let m = common::random_plane_map(seed, 12);
        if block_sets(&m, None) != block_sets(&m, Some(seed)) {
            return Err(format!("decomposition depends on edge order, seed {seed}"));
        }
    }
    // Hole insertion on good 6-vertex blocks.
    let mut insertions = 0;
    for m in enumerate_blocks(6).map_err(|e| e.to_string())? {
        if !decompose(&m)[0].is_good().unwrap_or(false) {
            continue;
        }
        let faces = m.faces();
        for (f, walk) in faces.walks.iter().enumerate().filter(|(_, w)| w.len() >= 4) {
            let xs = m.walk_vertices(walk);
            for start in 0..xs.len() {
                for take in 2..=xs.len() {
                    let attach: Vec<Vertex> = (0..take).map(|i| xs[(start + i) % xs.len()]).collect();
                    let Ok(bigger) = m.insert_vertex_in_face(f, &attach) else { continue };
                    insertions += 1;
                    let blocks = decompose(&bigger);
                    if blocks.len() != 1 || !blocks[0].is_good().unwrap_or(false) {
                        return Err(format!("insertion at {attach:?} yields a bad block"));
                    }
                }
            }
        }
    }
    Ok(format!(
        "1000 maps; {graphs} graphs × {} patterns; 500 shuffles; {insertions} hole insertions",
        patterns.len()
    ))
}

/// Block edge sets in original ids, after an optional shuffle of labels and
/// rotation starting points.
fn block_sets(m: &PlaneMap, shuffle: Option<u64>) -> BTreeSet<Vec<(Vertex, Vertex)>> {
    let (map, back) = match shuffle {
        None => (m.clone(), (0..m.n()).collect::<Vec<_>>()),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let perm = common::random_perm(&mut rng, m.n());
            let rot = m
                .relabel(&perm)
                .rotations()
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    if !r.is_empty() {
                        let k = perm[r[0]] % r.len();
                        r.rotate_left(k);
                    }
                    r
                })
                .collect();
            let mut back = vec![0; m.n()];
            for (v, &p) in perm.iter().enumerate() {
                back[p] = v;
            }
            (PlaneMap::from_rotation(rot).unwrap(), back)
        }
    };
    decompose(&map)
        .into_iter()
        .map(|b| {
            let mut es: Vec<_> = b.edges.iter().map(|&(u, v)| (back[u].min(back[v]), back[u].max(back[v]))).collect();
            es.sort_unstable();
            es
        })
        .collect()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "construction formula", construction),
        (2, "oracle vs 2C3 formula", two_triangles),
        (3, "oracle vs tC formula", three_cycles),
        (4, "C3+C5 lower bound", lower_bound),
        (5, "block census", block_counts),
        (6, "six-vertex blocks", six_vertex_blocks),
        (7, "extremal block structure", extremal_blocks),
        (8, "census arithmetic", census_arithmetic),
        (9, "property suites", property_suites),
    ];
    let strict = std::env::var_os("PTL_STRICT").is_some();
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} PASS {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&id);
                let tag = if known { " (known)" } else { "" };
                println!("criterion {id} FAIL{tag} {name} [{secs:.2}s]: {detail}");
                if strict || !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
