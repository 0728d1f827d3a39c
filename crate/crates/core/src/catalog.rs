//! Built-in catalog of small triangular blocks, frozen from exhaustive
//! enumeration (see `oracle::enumerate_blocks`).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::blocks::{bad_pair_of, holes_of, is_fan_graph, is_wheel_graph};
use crate::graph::Graph;
use crate::plane::{PlaneCode, PlaneMap};

/// Catalog bound on block order.
pub const CATALOG_MAX_VERTICES: usize = 6;

const GOLDEN: &str = include_str!("../data/block_catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub alias: String,
    pub vertices: usize,
    pub edges: usize,
    pub f3: usize,
    pub holes: Vec<usize>,
    /// Defined from 6 vertices on.
    pub good: Option<bool>,
    pub degree_sequence: Vec<usize>,
    pub code: PlaneCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCatalog {
    pub max_vertices: usize,
    pub entries: Vec<CatalogEntry>,
}

impl BlockCatalog {
    /// Entries on exactly `v` vertices.
    pub fn slice(&self, v: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.vertices == v)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }
}

pub fn builtin() -> &'static BlockCatalog {
    static CATALOG: OnceLock<BlockCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(GOLDEN).expect("bundled block catalog is valid JSON"))
}

pub fn lookup(code: &PlaneCode) -> Option<&'static CatalogEntry> {
    builtin().entries.iter().find(|e| &e.code == code)
}

/// Classes a block through both ends of a deleted edge may take in a
/// C3∪C5-free plane graph: the diamond, the three 5-vertex blocks with
/// `f3 ≤ e/2`, and the bad 6-vertex blocks.
pub fn pair_block_aliases() -> Vec<String> {
    let mut out: Vec<String> = ["diamond", "fan5", "wheel5", "k4ear"].map(String::from).to_vec();
    out.extend(
        builtin()
            .slice(6)
            .filter(|e| e.good == Some(false))
            .map(|e| e.alias.clone()),
    );
    out
}

/// Name from structure alone, when the block is one of the named shapes.
pub fn structural_name(g: &Graph) -> Option<String> {
    let (n, e) = (g.n(), g.edge_count());
    let name = match (n, e) {
        (2, 1) => "edge".to_string(),
        (3, 3) => "triangle".to_string(),
        (4, 5) => "diamond".to_string(),
        (4, 6) => "k4".to_string(),
        (5, 9) => "k5me".to_string(),
        _ if is_wheel_graph(g) => format!("wheel{n}"),
        _ if is_fan_graph(g) => format!("fan{n}"),
        (5, 8) if (0..5).any(|x| g.degree(x) == 2 && g.remove_vertices(&[x]).edge_count() == 6) => "k4ear".to_string(),
        (6, 12) if (0..6).all(|x| g.degree(x) == 4) => "octahedron".to_string(),
        _ => return None,
    };
    Some(name)
}

/// Catalog entries for single-block maps, sorted by order, size, 3-faces and
/// code. Structural names are used when unambiguous; the rest are numbered
/// `b{v}_{i}` by position among blocks of that order.
pub fn build(maps: &[PlaneMap], max_vertices: usize) -> BlockCatalog {
    let mut entries: Vec<(Option<String>, CatalogEntry)> = maps
        .iter()
        .map(|m| {
            let g = m.graph();
            let mut holes: Vec<usize> = holes_of(m).iter().map(Vec::len).collect();
            holes.sort_unstable();
            let entry = CatalogEntry {
                alias: String::new(),
                vertices: m.n(),
                edges: m.edge_count(),
                f3: m.f3(),
                holes,
                good: (m.n() >= 6).then(|| bad_pair_of(m).is_none()),
                degree_sequence: g.degree_sequence(),
                code: m.plane_code(),
            };
            (structural_name(g), entry)
        })
        .collect();
    entries.sort_by(|a, b| {
        let key = |e: &CatalogEntry| (e.vertices, e.edges, e.f3, e.code.clone());
        key(&a.1).cmp(&key(&b.1))
    });
    entries.dedup_by(|a, b| a.1.code == b.1.code);
    let names: Vec<Option<String>> = entries.iter().map(|(n, _)| n.clone()).collect();
    let mut index_in_order = 0;
    let mut last_order = 0;
    for (name, entry) in entries.iter_mut() {
        if entry.vertices != last_order {
            last_order = entry.vertices;
            index_in_order = 0;
        }
        index_in_order += 1;
        let unique = name.is_some() && names.iter().filter(|x| *x == name).count() == 1;
        entry.alias = if unique {
            name.clone().unwrap()
        } else {
            format!("b{}_{}", entry.vertices, index_in_order)
        };
    }
    BlockCatalog {
        max_vertices,
        entries: entries.into_iter().map(|(_, e)| e).collect(),
    }
}
