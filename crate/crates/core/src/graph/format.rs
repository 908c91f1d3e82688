//! Plain-text graph files.
//!
//! ```text
//! p cc <n> <m>
//! e <u> <v>      (m lines, u < v, sorted)
//! ```
//!
//! Lines starting with `c` are comments and blank lines are ignored when
//! reading; writing always produces the canonical form.

use super::{Graph, GraphError};
use crate::sim::VertexId;
use std::fs;
use std::io::Write;
use std::path::Path;

pub fn write_text<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "p cc {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {u} {v}")?;
    }
    Ok(())
}

pub fn to_text(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_text(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

pub fn save(g: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    write_text(g, &mut f)?;
    f.flush()?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    from_text(&fs::read_to_string(path)?)
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn from_text(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["p", "cc", n, m] => {
                if header.is_some() {
                    return Err(parse_err(line_no, "second header line"));
                }
                let n = n.parse().map_err(|_| parse_err(line_no, "bad vertex count"))?;
                let m = m.parse().map_err(|_| parse_err(line_no, "bad edge count"))?;
                header = Some((n, m));
            }
            ["e", u, v] => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line_no, "edge before header"));
                };
                let u: VertexId = u.parse().map_err(|_| parse_err(line_no, "bad vertex id"))?;
                let v: VertexId = v.parse().map_err(|_| parse_err(line_no, "bad vertex id"))?;
                if u as usize >= n || v as usize >= n {
                    return Err(parse_err(line_no, format!("vertex out of range for n = {n}")));
                }
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at {u}")));
                }
                edges.push((u, v));
            }
            _ => return Err(parse_err(line_no, format!("unrecognised line {line:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing 'p cc' header"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => parse_err(0, format!("duplicate edge {u}-{v}")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_fixture() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(to_text(&k3), "p cc 3 3\ne 0 1\ne 0 2\ne 1 2\n");
        assert_eq!(from_text("p cc 3 3\ne 0 1\ne 0 2\ne 1 2\n").unwrap(), k3);
    }

    #[test]
    fn empty_graph_fixture() {
        assert_eq!(to_text(&Graph::empty(4)), "p cc 4 0\n");
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "p cc 3 1\ne 0 0\n",
            "p cc 3 1\ne 0 3\n",
            "p cc 3 2\ne 0 1\ne 1 0\n",
            "p cc 3 2\ne 0 1\n",
            "e 0 1\n",
            "p cc x 0\n",
            "q 1 2\n",
            "",
        ] {
            assert!(matches!(from_text(bad), Err(GraphError::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = Graph::from_edges(5, [(4, 0), (1, 3)]).unwrap();
        save(&g, &path).unwrap();
        assert_eq!(load(&path).unwrap(), g);
        assert!(matches!(load(dir.path().join("missing")), Err(GraphError::Io(_))));
    }

    proptest! {
        #[test]
        fn text_round_trip(n in 1usize..30, raw in proptest::collection::vec((0u32..30, 0u32..30), 0..80)) {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = raw
                .into_iter()
                .map(|(u, v)| (u % n as u32, v % n as u32))
                .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let text = to_text(&g);
            let back = from_text(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_text(&back), text);
        }
    }
}
