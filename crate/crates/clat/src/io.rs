//! Shared edge-list text format.
//!
//! Lines starting with `#` are comments. The first non-comment line is
//! `n m` (vertex and edge count); the following `m` lines are `u v`
//! with 0-based ids, whitespace-separated, LF line endings. Writing is
//! canonical: comments first, then `n m`, then edges in sorted order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn write_edge_list<W: Write>(g: &Graph, comments: &[String], mut w: W) -> Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "{} {}", g.vertex_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_edge_list_file<P: AsRef<Path>>(g: &Graph, comments: &[String], path: P) -> Result<()> {
    let f = File::create(path)?;
    write_edge_list(g, comments, BufWriter::new(f))
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse = |s: Option<&str>, what: &str| -> Result<usize> {
            let tok = s.ok_or_else(|| Error::MalformedEdgeList {
                line: line_no,
                reason: format!("missing {what}"),
            })?;
            tok.parse().map_err(|_| Error::MalformedEdgeList {
                line: line_no,
                reason: format!("invalid {what} {tok:?}"),
            })
        };
        let a = parse(fields.next(), "integer")?;
        let b = parse(fields.next(), "integer")?;
        if let Some(extra) = fields.next() {
            return Err(Error::MalformedEdgeList {
                line: line_no,
                reason: format!("unexpected trailing token {extra:?}"),
            });
        }
        match header {
            None => header = Some((a, b)),
            Some(_) => edges.push((a, b)),
        }
    }
    let (n, m) = header.ok_or(Error::MalformedEdgeList {
        line: 0,
        reason: "missing `n m` header line".into(),
    })?;
    if edges.len() != m {
        return Err(Error::MalformedEdgeList {
            line: 0,
            reason: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

pub fn read_edge_list_file<P: AsRef<Path>>(path: P) -> Result<Graph> {
    let f = File::open(path)?;
    read_edge_list(BufReader::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identical() {
        let g = Graph::new(4, &[(2, 3), (0, 1), (1, 2)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &["test".into()], &mut buf).unwrap();
        let h = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g, h);
        let mut buf2 = Vec::new();
        write_edge_list(&h, &["test".into()], &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let text = "# a comment\n\n3 2\n0 1\n# inline\n1 2\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rejects_bad_counts_and_tokens() {
        assert!(matches!(
            read_edge_list("2 2\n0 1\n".as_bytes()),
            Err(Error::MalformedEdgeList { .. })
        ));
        assert!(matches!(
            read_edge_list("2 1\n0 x\n".as_bytes()),
            Err(Error::MalformedEdgeList { .. })
        ));
        assert!(matches!(
            read_edge_list("".as_bytes()),
            Err(Error::MalformedEdgeList { .. })
        ));
    }
}
