//! Graph file formats.
//!
//! JSON: `{"n":5,"root":0,"edges":[[0,1],[1,2]]}`
//!
//! Edge list text: a header line `n root`, then one `u v` pair per line.
//!
//! Writers emit edges in canonical sorted `(min, max)` order followed by a
//! single trailing newline, so `write(read(write(g)))` is byte-identical to
//! `write(g)`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RootedGraph;

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    root: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    EdgeList,
}

impl GraphFormat {
    /// `.json` files are JSON; anything else is an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => GraphFormat::Json,
            _ => GraphFormat::EdgeList,
        }
    }

    /// Guess from content: JSON starts with `{`.
    pub fn sniff(text: &str) -> Self {
        if text.trim_start().starts_with('{') {
            GraphFormat::Json
        } else {
            GraphFormat::EdgeList
        }
    }
}

pub fn to_json(g: &RootedGraph) -> String {
    let file = GraphFile {
        n: g.order(),
        root: g.root(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("graph file serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<RootedGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    RootedGraph::new(
        file.n,
        file.edges.into_iter().map(|[u, v]| (u, v)),
        file.root,
    )
}

pub fn to_edge_list(g: &RootedGraph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.root());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<RootedGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let (n, root) = parse_pair(header, 1)?;
    let edges = lines
        .map(|(i, l)| parse_pair(l, i + 1))
        .collect::<Result<Vec<_>>>()?;
    RootedGraph::new(n, edges, root)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!(
            "line {lineno}: expected two non-negative integers, got {line:?}"
        ))),
    }
}

pub fn parse(text: &str, format: GraphFormat) -> Result<RootedGraph> {
    match format {
        GraphFormat::Json => from_json(text),
        GraphFormat::EdgeList => from_edge_list(text),
    }
}

pub fn render(g: &RootedGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => to_json(g),
        GraphFormat::EdgeList => to_edge_list(g),
    }
}

/// Reads a graph, choosing the format from the content.
pub fn read_graph(path: &Path) -> Result<RootedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse(&text, GraphFormat::sniff(&text))
}

pub fn write_graph(path: &Path, g: &RootedGraph, format: GraphFormat) -> Result<()> {
    std::fs::write(path, render(g, format))?;
    Ok(())
}
