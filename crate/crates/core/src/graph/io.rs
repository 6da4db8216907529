use super::Graph;
use crate::error::{input, Result};
use std::io::{BufRead, Write};

/// Reads the edge-list format: `#` comments, optional `n <count>` header,
/// then one whitespace-separated pair of 0-based ids per line.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let a = parts.next().unwrap();
        let b = parts.next();
        if parts.next().is_some() {
            return input(format!("line {}: expected two fields", lineno + 1));
        }
        if a == "n" {
            let count = b.and_then(|s| s.parse().ok());
            match (count, n, edges.is_empty()) {
                (Some(c), None, true) => n = Some(c),
                _ => return input(format!("line {}: misplaced or malformed header", lineno + 1)),
            }
            continue;
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| format!("line {}: bad vertex id {s:?}", lineno + 1));
        let (u, v) = match (parse(a), b.map(parse)) {
            (Ok(u), Some(Ok(v))) => (u, v),
            (Err(e), _) | (_, Some(Err(e))) => return input(e),
            (_, None) => return input(format!("line {}: expected two fields", lineno + 1)),
        };
        edges.push((u, v));
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "n {}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
