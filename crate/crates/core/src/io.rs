//! Text formats: `adjlist v1`, `rot v1` and DOT export.
//!
//! Both text formats are a vertex count line followed by `v: u1 u2 …` lines.
//! For `adjlist` the neighbors are a set; for `rot` their order is the
//! cyclic rotation at `v`. Blank lines are skipped and `#` starts a comment.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::plane::{MapError, PlaneMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("input has no vertex count line")]
    Empty,
    #[error("invalid rotation system: {0}")]
    Map(#[from] MapError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Vertex count and per-vertex neighbor lists, each with its line number.
struct Lists {
    n: usize,
    rows: Vec<Option<(usize, Vec<Vertex>)>>,
}

fn parse_lists(text: &str) -> Result<Lists, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, head) = lines.next().ok_or(ParseError::Empty)?;
    let n: usize = head
        .parse()
        .map_err(|_| syntax(first, format!("expected a vertex count, found {head:?}")))?;
    let mut rows: Vec<Option<(usize, Vec<Vertex>)>> = vec![None; n];
    for (no, line) in lines {
        let (v, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(no, "expected `v: neighbors`"))?;
        let v: Vertex = v
            .trim()
            .parse()
            .map_err(|_| syntax(no, format!("bad vertex {:?}", v.trim())))?;
        if v >= n {
            return Err(syntax(no, format!("vertex {v} out of range 0..{n}")));
        }
        if rows[v].is_some() {
            return Err(syntax(no, format!("vertex {v} listed twice")));
        }
        let nbrs = rest
            .split_whitespace()
            .map(|t| {
                let w: Vertex = t.parse().map_err(|_| syntax(no, format!("bad neighbor {t:?}")))?;
                if w >= n {
                    return Err(syntax(no, format!("neighbor {w} out of range 0..{n}")));
                }
                if w == v {
                    return Err(syntax(no, format!("loop at vertex {v}")));
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows[v] = Some((no, nbrs));
    }
    Ok(Lists { n, rows })
}

/// Checks that every listed neighbor lists back, and that no list repeats.
fn check_symmetric(lists: &Lists) -> Result<(), ParseError> {
    let has = |a: Vertex, b: Vertex| lists.rows[a].as_ref().is_some_and(|(_, l)| l.contains(&b));
    for (v, row) in lists.rows.iter().enumerate() {
        let Some((no, nbrs)) = row else { continue };
        let mut sorted = nbrs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(syntax(*no, format!("vertex {v} lists a neighbor twice")));
        }
        if let Some(&w) = nbrs.iter().find(|&&w| !has(w, v)) {
            return Err(syntax(*no, format!("{v} lists {w} but {w} does not list {v}")));
        }
    }
    Ok(())
}

pub fn parse_adjlist(text: &str) -> Result<Graph, ParseError> {
    let lists = parse_lists(text)?;
    check_symmetric(&lists)?;
    let mut g = Graph::empty(lists.n);
    for (v, row) in lists.rows.iter().enumerate() {
        for &w in row.iter().flat_map(|(_, l)| l) {
            if v < w {
                g.add_edge(v, w);
            }
        }
    }
    Ok(g)
}

pub fn write_adjlist(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for v in 0..g.n() {
        write_row(&mut s, v, g.neighbors(v));
    }
    s
}

pub fn parse_rot(text: &str) -> Result<PlaneMap, ParseError> {
    let lists = parse_lists(text)?;
    check_symmetric(&lists)?;
    let rot = lists.rows.into_iter().map(|r| r.map(|(_, l)| l).unwrap_or_default()).collect();
    Ok(PlaneMap::from_rotation(rot)?)
}

pub fn write_rot(m: &PlaneMap) -> String {
    let mut s = format!("{}\n", m.n());
    for v in 0..m.n() {
        write_row(&mut s, v, m.rotation(v));
    }
    s
}

fn write_row(s: &mut String, v: Vertex, nbrs: &[Vertex]) {
    let _ = write!(s, "{v}:");
    for w in nbrs {
        let _ = write!(s, " {w}");
    }
    s.push('\n');
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// DOT with each edge tagged by the faces on its two sides, as indices into
/// `PlaneMap::faces().walks`.
pub fn map_to_dot(m: &PlaneMap) -> String {
    let faces = m.faces();
    let mut s = String::from("graph G {\n");
    let _ = writeln!(s, "  // {} faces", faces.len());
    for v in 0..m.n() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in m.graph().edges() {
        let d = m.dart(u, v).expect("edge has a dart");
        let (a, b) = (faces.face_of_dart(d), faces.face_of_dart(m.twin(d)));
        let _ = writeln!(s, "  {u} -- {v} [faces=\"{},{}\"];", a.min(b), a.max(b));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjlist_round_trip() {
        let g = Graph::complete(2).join(&Graph::path(3));
        let text = write_adjlist(&g);
        assert_eq!(parse_adjlist(&text).unwrap(), g);
        let commented = format!("# a comment\n\n{}", text.replace('\n', "  # trailing\n"));
        assert_eq!(parse_adjlist(&commented).unwrap(), g);
    }

    #[test]
    fn rot_round_trip() {
        let text = "4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";
        let m = parse_rot(text).unwrap();
        assert_eq!(m.faces().len(), 4);
        assert_eq!(write_rot(&m), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_adjlist("3\n0: 1\n\n1: 0 7\n").unwrap_err();
        assert_eq!(
            e,
            ParseError::Syntax {
                line: 4,
                message: "neighbor 7 out of range 0..3".into()
            }
        );
        assert!(matches!(parse_adjlist("3\n0: 1\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_adjlist("x\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert_eq!(parse_adjlist("# nothing\n"), Err(ParseError::Empty));
        assert!(matches!(parse_rot("2\n0:\n1:\n"), Err(ParseError::Map(MapError::Disconnected))));
    }

    #[test]
    fn dot_lists_faces() {
        let m = parse_rot("3\n0: 1 2\n1: 2 0\n2: 0 1\n").unwrap();
        let dot = map_to_dot(&m);
        assert!(dot.contains("0 -- 1 [faces=\"0,1\"];"));
        assert_eq!(dot.matches("--").count(), 3);
    }
}
