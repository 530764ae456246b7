//! Graphs, planarity validation and the input formats for combinatorial instances.

mod mis;
mod planar;
mod udg;

pub use mis::{mis_exact, mis_exhaustive, mis_size, Bits, MisOptions, MisResult, DEFAULT_VERTEX_BUDGET};
pub use planar::{is_planar, is_planar_by_rotations};
pub use udg::{check_mis_correspondence, unit_disk_graph, CorrespondenceReport, UnitDiskGraph, GUARD_BAND};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Simple undirected graph: no loops, no parallel edges. Edges are stored as
/// (u, v) with u < v in sorted order; adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Builds a simple graph, rejecting loops, duplicates and out-of-range indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({},{})", w[0].0, w[0].1)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: canon, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks that `set` is independent, returning the first adjacent pair otherwise.
    pub fn check_independent(&self, set: &[usize]) -> Result<()> {
        let mut mark = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return Err(Error::InvalidGraph(format!("vertex {v} out of range")));
            }
            mark[v] = true;
        }
        for &(u, v) in &self.edges {
            if mark[u] && mark[v] {
                return Err(Error::NotIndependent(u, v));
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

/// Graph exactly as read from a file; may contain loops or repeated edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl RawGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        RawGraph { n, edges: edges.iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Plain edge list: one "u v" pair per line, 0-indexed. An optional line
    /// "n N" fixes the vertex count; '#' starts a comment.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n_decl = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            let toks: Vec<(usize, &str)> = tokens(body);
            if toks.is_empty() {
                continue;
            }
            let err = |col: usize, message: String| Error::Parse { line: lineno + 1, column: col + 1, message };
            if toks[0].1 == "n" {
                if toks.len() != 2 {
                    return Err(err(toks[0].0, "expected `n <count>`".into()));
                }
                let n = toks[1].1.parse::<usize>().map_err(|e| err(toks[1].0, e.to_string()))?;
                n_decl = Some(n);
                continue;
            }
            if toks.len() != 2 {
                return Err(err(toks[0].0, format!("expected two vertex indices, found {} tokens", toks.len())));
            }
            let u = toks[0].1.parse::<usize>().map_err(|e| err(toks[0].0, e.to_string()))?;
            let v = toks[1].1.parse::<usize>().map_err(|e| err(toks[1].0, e.to_string()))?;
            edges.push([u, v]);
        }
        let n = n_decl.unwrap_or_else(|| edges.iter().flat_map(|e| e.iter().copied()).max().map_or(0, |m| m + 1));
        Ok(RawGraph { n, edges })
    }

    /// JSON if the text starts with '{', edge list otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_edge_list(text)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphViolation {
    VertexOutOfRange { u: usize, v: usize },
    SelfLoop { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    DegreeTooHigh { vertex: usize, degree: usize },
    NonPlanar,
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::VertexOutOfRange { u, v } => write!(f, "edge ({u},{v}) references a missing vertex"),
            GraphViolation::SelfLoop { vertex } => write!(f, "self-loop at {vertex}"),
            GraphViolation::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u},{v})"),
            GraphViolation::DegreeTooHigh { vertex, degree } => write!(f, "vertex {vertex} has degree {degree} > 3"),
            GraphViolation::NonPlanar => write!(f, "graph is not planar"),
        }
    }
}

/// Lists every reason the input is not a planar graph of maximum degree 3.
pub fn validate_planar_deg3(g: &RawGraph) -> Vec<GraphViolation> {
    let mut out = Vec::new();
    let mut simple = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &[u, v] in &g.edges {
        if u >= g.n || v >= g.n {
            out.push(GraphViolation::VertexOutOfRange { u, v });
        } else if u == v {
            out.push(GraphViolation::SelfLoop { vertex: u });
        } else if !seen.insert((u.min(v), u.max(v))) {
            out.push(GraphViolation::DuplicateEdge { u: u.min(v), v: u.max(v) });
        } else {
            simple.push((u.min(v), u.max(v)));
        }
    }
    let sg = Graph::from_edges(g.n, &simple).expect("filtered edges form a simple graph");
    for v in 0..g.n {
        if sg.degree(v) > 3 {
            out.push(GraphViolation::DegreeTooHigh { vertex: v, degree: sg.degree(v) });
        }
    }
    if !is_planar(&sg) {
        out.push(GraphViolation::NonPlanar);
    }
    out
}

/// A validated planar graph of maximum degree 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph(Graph);

impl PlanarGraph {
    pub fn new(raw: &RawGraph) -> Result<Self> {
        let report = validate_planar_deg3(raw);
        if !report.is_empty() {
            let msg: Vec<String> = report.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidGraph(msg.join("; ")));
        }
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(PlanarGraph(Graph::from_edges(raw.n, &edges)?))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(&RawGraph::new(n, edges))
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }
}

impl std::ops::Deref for PlanarGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

/// Small named graphs used by tests, examples and the CLI.
pub mod named {
    use super::PlanarGraph;

    fn pg(n: usize, e: &[(usize, usize)]) -> PlanarGraph {
        PlanarGraph::from_edges(n, e).expect("named graph is planar with degree <= 3")
    }

    pub fn k2() -> PlanarGraph {
        pg(2, &[(0, 1)])
    }
    pub fn path(n: usize) -> PlanarGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pg(n, &e)
    }
    pub fn cycle(n: usize) -> PlanarGraph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((0, n - 1));
        pg(n, &e)
    }
    pub fn star3() -> PlanarGraph {
        pg(4, &[(0, 1), (0, 2), (0, 3)])
    }
    pub fn k4() -> PlanarGraph {
        pg(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }
    pub fn prism() -> PlanarGraph {
        pg(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    }
    pub fn cube() -> PlanarGraph {
        pg(8, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7), (0, 4), (1, 5), (2, 6), (3, 7)])
    }

    /// Planar, degree ≤ 3 graphs with at most eight vertices used as the test corpus.
    pub fn corpus() -> Vec<(&'static str, PlanarGraph)> {
        vec![
            ("empty", pg(0, &[])),
            ("k1", pg(1, &[])),
            ("k2", k2()),
            ("two-isolated", pg(2, &[])),
            ("p3", path(3)),
            ("p4", path(4)),
            ("star3", star3()),
            ("c3", cycle(3)),
            ("c4", cycle(4)),
            ("c5", cycle(5)),
            ("k4", k4()),
            ("paw", pg(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])),
            ("diamond", pg(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])),
            ("bull", pg(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)])),
            ("k2+p3", pg(5, &[(0, 1), (2, 3), (3, 4)])),
            ("prism", prism()),
            ("c6", cycle(6)),
            ("spider", pg(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])),
            ("theta", pg(7, &[(0, 1), (1, 2), (2, 6), (0, 3), (3, 6), (0, 4), (4, 5), (5, 6)])),
            ("cube", cube()),
            ("c8", cycle(8)),
            ("ladder", pg(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (0, 4), (1, 5), (2, 6), (3, 7)])),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        assert!(validate_planar_deg3(&RawGraph::new(0, &[])).is_empty());
        assert!(validate_planar_deg3(&named::k4().to_raw()).is_empty());
        let k5: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let rep = validate_planar_deg3(&RawGraph::new(5, &k5));
        assert!(rep.contains(&GraphViolation::NonPlanar));
        assert_eq!(rep.iter().filter(|v| matches!(v, GraphViolation::DegreeTooHigh { degree: 4, .. })).count(), 5);
    }

    #[test]
    fn loops_and_duplicates_reported() {
        let rep = validate_planar_deg3(&RawGraph::new(3, &[(0, 0), (0, 1), (1, 0), (1, 5)]));
        assert!(rep.contains(&GraphViolation::SelfLoop { vertex: 0 }));
        assert!(rep.contains(&GraphViolation::DuplicateEdge { u: 0, v: 1 }));
        assert!(rep.contains(&GraphViolation::VertexOutOfRange { u: 1, v: 5 }));
    }

    #[test]
    fn edge_list_parsing() {
        let g = RawGraph::parse("# triangle\n0 1\n1 2\n\n2 0\n").unwrap();
        assert_eq!(g.n, 3);
        assert_eq!(g.edges.len(), 3);
        let g = RawGraph::parse("n 5\n0 1\n").unwrap();
        assert_eq!(g.n, 5);
        match RawGraph::parse("0 1\n1 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        let j = RawGraph::parse(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(j, named::k2().to_raw());
    }

    #[test]
    fn corpus_is_valid() {
        for (name, g) in named::corpus() {
            assert!(g.max_degree() <= 3, "{name}");
            assert!(g.vertex_count() <= 8, "{name}");
        }
    }
}
