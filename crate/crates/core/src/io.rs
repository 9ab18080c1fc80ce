//! Graph encodings.
//!
//! Edge list: a header `n m`, then `n` label lines, then `m` lines
//! `label1 label2`. Edges are written with the lower id first, in id order,
//! so writing a parsed file reproduces a canonically written one byte for
//! byte.
//!
//! JSON: `{"vertices": [...], "edges": [[a, b], ...]}` with the same edge
//! order.
//!
//! DOT (write only): an undirected `graph` with quoted labels as node names
//! and no layout attributes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
    Dot,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

pub fn to_edge_list(g: &Graph) -> Result<String> {
    if let Some(bad) = g
        .labels()
        .iter()
        .find(|l| l.chars().any(char::is_whitespace))
    {
        return Err(Error::InvalidArgument(format!(
            "label `{bad}` contains whitespace and cannot be written as an edge list"
        )));
    }
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for l in g.labels() {
        writeln!(out, "{l}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    Ok(out)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let parse_err = |line, message: &str| Error::Parse {
        line,
        message: message.to_owned(),
    };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let counts: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(hline, "header must be two nonnegative integers"))?;
    let [n, m] = counts[..] else {
        return Err(parse_err(hline, "header must be two nonnegative integers"));
    };

    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, l) = lines
            .next()
            .ok_or_else(|| parse_err(hline, &format!("expected {n} vertex labels")))?;
        if l.split_whitespace().count() != 1 {
            return Err(parse_err(line, "vertex line must hold exactly one label"));
        }
        labels.push(l);
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, l) = lines
            .next()
            .ok_or_else(|| parse_err(hline, &format!("expected {m} edge lines")))?;
        let mut it = l.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => edges.push((a, b)),
            _ => return Err(parse_err(line, "edge line must hold exactly two labels")),
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after the declared edges"));
    }
    build_graph(&labels, &edges)
}

pub fn to_json(g: &Graph) -> Result<String> {
    let doc = JsonGraph {
        vertices: g.labels().to_vec(),
        edges: g
            .edges()
            .map(|(u, v)| [g.label(u).to_owned(), g.label(v).to_owned()])
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc)?;
    out.push('\n');
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let edges: Vec<(&str, &str)> = doc
        .edges
        .iter()
        .map(|[a, b]| (a.as_str(), b.as_str()))
        .collect();
    build_graph(&doc.vertices, &edges)
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for l in g.labels() {
        writeln!(out, "  {};", dot_id(l)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", dot_id(g.label(u)), dot_id(g.label(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn encode(g: &Graph, format: GraphFormat) -> Result<String> {
    match format {
        GraphFormat::EdgeList => to_edge_list(g),
        GraphFormat::Json => to_json(g),
        GraphFormat::Dot => Ok(to_dot(g)),
    }
}

/// Reads a graph file; `.json` files are parsed as JSON, anything else as an
/// edge list.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
    {
        parse_json(&text)
    } else {
        parse_edge_list(&text)
    }
}
