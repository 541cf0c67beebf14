//! Edge-list files: a header line `n m`, then `m` lines `u v` with `u < v`.

use std::io::{BufRead, Write};

use super::{Graph, GraphError};

pub fn write_edge_list<W: Write>(g: &Graph, out: W) -> Result<(), GraphError> {
    let mut out = std::io::BufWriter::new(out);
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph, GraphError> {
    let mut lines = input.lines().enumerate();
    let (n, m) = match lines.next() {
        Some((_, line)) => parse_pair::<usize>(&line?, 1)?,
        None => return Err(GraphError::Parse("missing header".into())),
    };
    let mut edges = Vec::with_capacity(m.min(1 << 24));
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair::<u32>(&line, i + 1)?;
        if u >= v {
            return Err(GraphError::Parse(format!("line {}: expected u < v", i + 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Parse(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<(T, T), GraphError> {
    let mut it = line.split_ascii_whitespace();
    let bad = || GraphError::Parse(format!("line {lineno}: expected two integers"));
    let a = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let b = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}
