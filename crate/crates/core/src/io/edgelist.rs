//! Canonical tab-separated edge lists.
//!
//! One edge per line as `u<TAB>v` with 0-based integer ids, `u < v`, sorted
//! ascending, newline-terminated. The writer is byte-deterministic, which is
//! what the determinism checks compare. The reader accepts symmetric repeats
//! silently (they collapse into the undirected edge) but rejects self-loops
//! and malformed lines with their line number.

use crate::graph::{Graph, NodeId};
use std::io::{self, BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("edge list: {0}")]
    Io(#[from] io::Error),
    #[error("edge list line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: u32 },
    #[error("edge list line {line}: expected 'u<TAB>v' with integer ids, got '{content}'")]
    Malformed { line: usize, content: String },
}

/// Writes the canonical edge list. Callers that care about throughput should
/// hand in a buffered writer.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{}\t{}", u.0, v.0)?;
    }
    Ok(())
}

/// Reads an edge list, constructing a graph over `max id + 1` nodes.
pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph, EdgeListError> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut max_id: Option<u32> = None;
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        let number = i + 1;
        let malformed = || EdgeListError::Malformed {
            line: number,
            content: line.to_string(),
        };
        let (a, b) = line.split_once('\t').ok_or_else(malformed)?;
        let u: u32 = a.parse().map_err(|_| malformed())?;
        let v: u32 = b.parse().map_err(|_| malformed())?;
        if u == v {
            return Err(EdgeListError::SelfLoop {
                line: number,
                node: u,
            });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    let mut g = Graph::with_nodes(n);
    for (u, v) in edges {
        // duplicate and symmetric repeats collapse silently
        g.add_edge(NodeId(u), NodeId(v));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_byte_canonical() {
        let g = Graph::from_edges(3, [(2, 0), (1, 2), (0, 1)]);
        let mut out = Vec::new();
        write_edge_list(&g, &mut out).unwrap();
        assert_eq!(out, b"0\t1\n0\t2\n1\t2\n");
    }

    #[test]
    fn round_trip_preserves_edges() {
        let g = Graph::from_edges(7, [(0, 3), (3, 5), (1, 2), (2, 6), (0, 6), (4, 5)]);
        let mut bytes = Vec::new();
        write_edge_list(&g, &mut bytes).unwrap();
        let back = read_edge_list(bytes.as_slice()).unwrap();
        assert_eq!(g, back);
        let mut again = Vec::new();
        write_edge_list(&back, &mut again).unwrap();
        assert_eq!(bytes, again);
    }

    #[test]
    fn symmetric_repeats_deduplicate() {
        let g = read_edge_list("0\t1\n1\t0\n0\t1\n".as_bytes()).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn self_loop_errors_with_line() {
        let err = read_edge_list("0\t1\n5\t5\n".as_bytes()).unwrap_err();
        match err {
            EdgeListError::SelfLoop { line, node } => {
                assert_eq!(line, 2);
                assert_eq!(node, 5);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_line_errors_with_line() {
        let err = read_edge_list("0\t1\nnot an edge\n".as_bytes()).unwrap_err();
        match err {
            EdgeListError::Malformed { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
        let err = read_edge_list("0 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, EdgeListError::Malformed { line: 1, .. }));
    }

    #[test]
    fn empty_input_gives_empty_graph() {
        let g = read_edge_list("".as_bytes()).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }
}
