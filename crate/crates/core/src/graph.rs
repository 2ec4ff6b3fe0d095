//! Finite simple undirected graphs and edge-list ingestion.
//!
//! Vertices are dense indices `0..n`. Each graph keeps the original label of
//! every vertex so results can be traced back to the ids used in the input file.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{ParseError, StructureError};

/// Dense vertex index, `0..n`.
pub type VertexId = usize;

/// Unordered pair of distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Builds the canonical form of `{a, b}`. Returns `None` for a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// Immutable simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<Edge>,
    adj: Vec<Vec<VertexId>>,
    // adj_edges[v][i] is the index into `edges` of the edge (v, adj[v][i]).
    adj_edges: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops and repeated pairs (in either
    /// orientation) are dropped.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut edges: Vec<Edge> = pairs
            .into_iter()
            .filter_map(|(a, b)| {
                assert!(a < n && b < n, "edge ({a}, {b}) out of range for n = {n}");
                Edge::new(a, b)
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();

        let mut incidence: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            incidence[e.u].push((e.v, idx));
            incidence[e.v].push((e.u, idx));
        }
        let mut adj = Vec::with_capacity(n);
        let mut adj_edges = Vec::with_capacity(n);
        for mut list in incidence {
            list.sort_unstable();
            let (nbrs, ids): (Vec<_>, Vec<_>) = list.into_iter().unzip();
            adj.push(nbrs);
            adj_edges.push(ids);
        }
        Graph {
            edges,
            adj,
            adj_edges,
            labels: (0..n as u64).collect(),
        }
    }

    /// Replaces the original-id labels. `labels.len()` must equal `n`.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order. Edge indices used across the crate refer to this slice.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    /// Indices into [`Graph::edges`] of the edges incident to `v`, aligned with [`Graph::neighbors`].
    pub fn incident_edges(&self, v: VertexId) -> &[usize] {
        &self.adj_edges[v]
    }

    /// Original id of every dense vertex.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, StructureError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Index of `{a, b}` in [`Graph::edges`].
    pub fn edge_index(&self, a: VertexId, b: VertexId) -> Result<usize, StructureError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let e = Edge::new(a, b).ok_or(StructureError::MissingEdge(a, b))?;
        self.edges
            .binary_search(&e)
            .map_err(|_| StructureError::MissingEdge(a, b))
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), StructureError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(StructureError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Number of connected components and a component label per vertex.
    /// Labels are assigned in order of each component's smallest vertex.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            stack.push(root);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).filter(|&v| self.adj[v].is_empty())
    }
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` are comments. An optional first data line
/// `n=<count>` declares the vertex set `0..count` and switches to literal ids
/// (every id must then be below `count`); this is the form written by
/// [`write_edge_list`]. Without the header, ids are re-indexed densely in order of
/// first appearance, and `vertex_hint` keeps otherwise unseen ids `0..hint` as
/// isolated vertices appended after the ones that appear in edges.
pub fn load_edge_list<R: BufRead>(reader: R, vertex_hint: Option<usize>) -> Result<Graph, ParseError> {
    let mut header: Option<usize> = None;
    let mut seen_data = false;
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("n=") {
            if seen_data {
                return Err(ParseError::line(lineno, "vertex-count header must precede all edges"));
            }
            let count = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::line(lineno, format!("bad vertex count {:?}", rest.trim())))?;
            header = Some(count);
            seen_data = true;
            continue;
        }
        seen_data = true;
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::line(
                lineno,
                format!("expected 2 vertex ids, found {} tokens", tokens.len()),
            ));
        }
        let parse = |tok: &str| {
            tok.parse::<u64>()
                .map_err(|_| ParseError::line(lineno, format!("invalid vertex id {tok:?}")))
        };
        raw_edges.push((parse(tokens[0])?, parse(tokens[1])?));
    }

    if let Some(n) = header {
        if let Some(&(a, b)) = raw_edges.iter().find(|&&(a, b)| a.max(b) >= n as u64) {
            return Err(ParseError::Format(format!(
                "edge ({a}, {b}) exceeds declared vertex count {n}"
            )));
        }
        let n = n.max(vertex_hint.unwrap_or(0));
        let pairs = raw_edges.into_iter().map(|(a, b)| (a as usize, b as usize));
        return Ok(Graph::from_edges(n, pairs));
    }

    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut intern = |id: u64, labels: &mut Vec<u64>| {
        *index.entry(id).or_insert_with(|| {
            labels.push(id);
            labels.len() - 1
        })
    };
    let mut pairs = Vec::with_capacity(raw_edges.len());
    for &(a, b) in &raw_edges {
        // Self-loops still register their vertex.
        let da = intern(a, &mut labels);
        let db = intern(b, &mut labels);
        pairs.push((da, db));
    }
    if let Some(hint) = vertex_hint {
        for id in 0..hint as u64 {
            intern(id, &mut labels);
        }
    }
    let n = labels.len();
    Ok(Graph::from_edges(n, pairs).with_labels(labels))
}

/// Writes the graph as a dense edge list with an `n=<count>` header, so isolated
/// vertices and dense ids survive a round trip through [`load_edge_list`].
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "n={}", g.n())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.u, e.v)?;
    }
    Ok(())
}

/// Writes `dense,original` rows mapping each dense vertex to its input id.
pub fn write_vertex_map<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "dense,original")?;
    for (v, label) in g.labels().iter().enumerate() {
        writeln!(out, "{v},{label}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Graph {
        load_edge_list(s.as_bytes(), None).unwrap()
    }

    #[test]
    fn triangle() {
        let g = parse("0 1\n1 2\n2 0\n");
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        for v in 0..3 {
            assert_eq!(g.degree(v).unwrap(), 2);
        }
        assert_eq!(g.connected_components().0, 1);
    }

    #[test]
    fn self_loops_and_duplicates_removed() {
        let g = parse("0 0\n0 1\n1 0\n");
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse("% konect header\n# comment\n\n10 20\n20 30\n");
        assert_eq!(g.n(), 3);
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn first_appearance_order() {
        let g = parse("7 3\n3 9\n");
        assert_eq!(g.labels(), &[7, 3, 9]);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
    }

    #[test]
    fn empty_input_is_empty_graph() {
        let g = parse("");
        assert_eq!(g.n(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.connected_components().0, 0);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        let err = load_edge_list("0 1\n1 x\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }), "{err}");
        let err = load_edge_list("0 1\n# c\n1 2 3\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 3, .. }), "{err}");
        let err = load_edge_list("-1 2\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 1, .. }), "{err}");
    }

    #[test]
    fn vertex_hint_keeps_trailing_isolated() {
        let g = load_edge_list("0 1\n1 2\n".as_bytes(), Some(5)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(3).unwrap(), 0);
        assert_eq!(g.degree(4).unwrap(), 0);
        assert_eq!(g.connected_components().0, 3);
        // A hint below max id + 1 changes nothing.
        let g = load_edge_list("0 1\n1 2\n".as_bytes(), Some(2)).unwrap();
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn header_declares_dense_ids() {
        let g = parse("n=4\n0 2\n1 2\n");
        assert_eq!(g.n(), 4);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2));
        assert_eq!(g.degree(3).unwrap(), 0);
        assert!(load_edge_list("n=2\n0 2\n".as_bytes(), None).is_err());
        assert!(load_edge_list("0 1\nn=2\n".as_bytes(), None).is_err());
    }

    #[test]
    fn degree_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.degree(0).unwrap(), 3);
        let g = Graph::from_edges(2, []);
        assert_eq!(g.degree(1).unwrap(), 0);
        assert_eq!(
            g.degree(2),
            Err(StructureError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        let (count, labels) = g.connected_components();
        assert_eq!(count, 2);
        assert_eq!(labels, vec![0, 0, 1, 1]);
    }

    #[test]
    fn edge_index_lookup() {
        let g = Graph::from_edges(3, [(2, 1), (0, 1)]);
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1 }, Edge { u: 1, v: 2 }]);
        assert_eq!(g.edge_index(2, 1).unwrap(), 1);
        assert_eq!(g.edge_index(0, 2), Err(StructureError::MissingEdge(0, 2)));
        for v in 0..3 {
            for (&w, &ei) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                assert_eq!(Edge::new(v, w).unwrap(), g.edges()[ei]);
            }
        }
    }
}
