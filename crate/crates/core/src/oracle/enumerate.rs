//! Enumeration of single-block plane maps and the 6-vertex goodness check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate_graphs, Filters};
use super::OracleError;
use crate::blocks::{bad_pair_of, decompose, is_fan_graph};
use crate::catalog::{self, BlockCatalog};
use crate::cycles::triangles;
use crate::graph::{Graph, Vertex};
use crate::plane::{all_embeddings, PlaneCode, PlaneMap, DEFAULT_EMBEDDING_BOUND};

/// Largest block order `enumerate_blocks` accepts.
pub const BLOCK_CAP: usize = 7;

fn every_edge_on_triangle(g: &Graph) -> bool {
    let mut covered = std::collections::HashSet::new();
    for [a, b, c] in triangles(g) {
        covered.extend([(a, b), (a, c), (b, c)]);
    }
    covered.len() == g.edge_count()
}

/// Every plane map on `v` vertices forming one triangular block, one per
/// plane-isomorphism class, sorted by code.
pub fn enumerate_blocks(v: usize) -> Result<Vec<PlaneMap>, OracleError> {
    if v > BLOCK_CAP {
        return Err(OracleError::CapExceeded { n: v, cap: BLOCK_CAP });
    }
    if v < 2 {
        return Ok(Vec::new());
    }
    // Gluing triangles along edges adds at least two edges per vertex.
    let filters = Filters {
        connected: true,
        planar: true,
        min_edges: Some(2 * v - 3),
        ..Filters::default()
    };
    let graphs: Vec<Graph> = generate_graphs(v, &filters)?
        .into_iter()
        .filter(|g| v == 2 || every_edge_on_triangle(g))
        .collect();
    let found: Vec<Result<Vec<PlaneMap>, OracleError>> = graphs
        .par_iter()
        .map(|g| {
            Ok(all_embeddings(g, DEFAULT_EMBEDDING_BOUND)?
                .into_iter()
                .filter(|m| decompose(m).len() == 1)
                .collect())
        })
        .collect();
    let mut maps = Vec::new();
    for r in found {
        maps.extend(r?);
    }
    let mut keyed: Vec<(PlaneCode, PlaneMap)> = maps.into_iter().map(|m| (m.plane_code(), m)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, m)| m).collect())
}

/// Catalog of all blocks on 2..=`max_v` vertices.
pub fn block_catalog(max_v: usize) -> Result<BlockCatalog, OracleError> {
    let mut maps = Vec::new();
    for v in 2..=max_v {
        maps.extend(enumerate_blocks(v)?);
    }
    Ok(catalog::build(&maps, max_v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadClass {
    pub alias: String,
    pub code: PlaneCode,
    pub edges: usize,
    pub f3: usize,
    pub degree_sequence: Vec<usize>,
    /// A nonadjacent pair on a hole lying on every 5-cycle.
    pub pair: (Vertex, Vertex),
    pub is_fan: bool,
    /// Aliases of the 5-vertex blocks left after deleting one vertex.
    pub parents: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixVertexReport {
    pub classes: usize,
    pub good: usize,
    pub bad: Vec<BadClass>,
    pub fan6_is_bad: bool,
    /// Every bad class has `2·f3 ≤ e`.
    pub bad_within_half: bool,
    pub pass: bool,
}

fn alias_of(code: &PlaneCode) -> String {
    catalog::lookup(code).map_or_else(|| "uncatalogued".to_string(), |e| e.alias.clone())
}

/// `m` minus vertex `x`, when that stays connected.
fn delete_vertex(m: &PlaneMap, x: Vertex) -> Option<PlaneMap> {
    let re = |y: Vertex| if y > x { y - 1 } else { y };
    let rot: Vec<Vec<Vertex>> = (0..m.n())
        .filter(|&y| y != x)
        .map(|y| m.rotation(y).iter().filter(|&&w| w != x).map(|&w| re(w)).collect())
        .collect();
    PlaneMap::from_rotation(rot).ok()
}

fn parents(m: &PlaneMap) -> Vec<String> {
    let mut out: Vec<String> = (0..m.n())
        .filter_map(|x| delete_vertex(m, x))
        .filter(|sub| sub.n() == 5 && decompose(sub).len() == 1)
        .map(|sub| alias_of(&sub.plane_code()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Evaluates goodness on every 6-vertex block class; passes when exactly two
/// are bad, the 6-vertex fan among them, and each bad class has `f3 ≤ e/2`.
pub fn verify_six_vertex_blocks() -> Result<SixVertexReport, OracleError> {
    let maps = enumerate_blocks(6)?;
    let mut bad = Vec::new();
    for m in &maps {
        let Some(pair) = bad_pair_of(m) else { continue };
        let code = m.plane_code();
        bad.push(BadClass {
            alias: alias_of(&code),
            edges: m.edge_count(),
            f3: m.f3(),
            degree_sequence: m.graph().degree_sequence(),
            pair,
            is_fan: is_fan_graph(m.graph()),
            parents: parents(m),
            code,
        });
    }
    let fan6_is_bad = bad.iter().any(|b| b.is_fan);
    let bad_within_half = bad.iter().all(|b| 2 * b.f3 <= b.edges);
    Ok(SixVertexReport {
        classes: maps.len(),
        good: maps.len() - bad.len(),
        pass: bad.len() == 2 && fan6_is_bad && bad_within_half,
        bad,
        fan6_is_bad,
        bad_within_half,
    })
}
