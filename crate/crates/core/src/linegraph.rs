//! Generalized line graphs and their DOT export.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::AnalysisError;
use crate::model::{Dim, IntersectionMatrix, LineGraph};

fn line_graph_where(
    m: &IntersectionMatrix,
    band: (usize, usize),
    linked: impl Fn(Dim) -> bool,
) -> LineGraph {
    let n = m.len();
    let mut edges = Vec::new();
    for h in 0..n {
        for k in h + 1..n {
            if linked(m.face(h, k)) {
                edges.push((h, k));
            }
        }
    }
    LineGraph::new(m.ids().to_vec(), edges, band)
}

/// Hyperedges become nodes; `h` and `k` are adjacent iff
/// `p_lo <= p_hk <= p_hi`.
pub fn generalized_line_graph(
    m: &IntersectionMatrix,
    p_lo: i64,
    p_hi: i64,
) -> Result<LineGraph, AnalysisError> {
    if p_lo < 0 || p_hi < 0 || p_lo > p_hi {
        return Err(AnalysisError::InvalidBand { lo: p_lo, hi: p_hi });
    }
    Ok(line_graph_where(
        m,
        (p_lo as usize, p_hi as usize),
        |p| p_lo <= p && p <= p_hi,
    ))
}

/// Line graph of the simplicial complex: adjacent iff `p_hk >= p_star`.
/// Nodes of dimension below `p_star` stay in the graph, isolated.
pub fn complex_line_graph(m: &IntersectionMatrix, p_star: usize) -> LineGraph {
    let lo = p_star as Dim;
    let hi = m.max_face().max(lo) as usize;
    line_graph_where(m, (p_star, hi), |p| p >= lo)
}

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    /// Graph name; `line_graph` when absent.
    pub name: Option<String>,
    /// Node labels keyed by node id; unlabeled nodes show their id.
    pub labels: BTreeMap<String, String>,
}

/// Undirected DOT document. Nodes in input order, edges sorted by
/// `(h, k)` index pair, the band noted in the graph label. No layout
/// attributes.
pub fn export_dot(g: &LineGraph, style: &RenderOptions) -> String {
    let mut out = String::new();
    let name = style.name.as_deref().unwrap_or("line_graph");
    let (lo, hi) = g.band();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    writeln!(out, "  label={};", quote(&format!("p in [{lo}, {hi}]"))).unwrap();
    for node in g.nodes() {
        match style.labels.get(node) {
            Some(label) => writeln!(out, "  {} [label={}];", quote(node), quote(label)).unwrap(),
            None => writeln!(out, "  {};", quote(node)).unwrap(),
        }
    }
    for (a, b) in g.edge_ids() {
        writeln!(out, "  {} -- {};", quote(a), quote(b)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
