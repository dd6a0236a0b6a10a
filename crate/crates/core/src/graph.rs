//! Undirected simple graphs with stable edge indexing, plus the plain-text
//! edge-list format used by every tool in this workspace.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Vertex index, `0..vertex_count`.
pub type Vertex = usize;
/// Edge index: the position of the edge in the input sequence.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: Vertex },
    #[error("edge {edge} duplicates edge {first} ({u}, {v})")]
    DuplicateEdge {
        edge: EdgeId,
        first: EdgeId,
        u: Vertex,
        v: Vertex,
    },
    #[error("vertex {vertex} out of range (vertex count {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge} out of range (edge count {m})")]
    EdgeOutOfRange { edge: EdgeId, m: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing \"n m\" header")]
    MissingHeader,
    #[error("malformed header {0:?}, expected \"n m\"")]
    MalformedHeader(String),
    #[error("malformed edge line {0:?}, expected \"u v\"")]
    MalformedEdge(String),
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range (vertex count {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// An undirected simple graph. Immutable after construction.
///
/// Adjacency lists are kept in input edge order; rooted traversals and the
/// exact solver's variable order both depend on that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { edge: i, vertex: u });
            }
            if let Some(&first) = seen.get(&(u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge {
                    edge: i,
                    first,
                    u,
                    v,
                });
            }
            seen.insert((u.min(v), u.max(v)), i);
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Neighbors of `v` paired with the connecting edge, in input order.
    #[inline]
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(GraphError::EdgeOutOfRange {
                edge: e,
                m: self.edges.len(),
            })
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    /// Edge joining `u` and `v`, scanning the shorter adjacency list.
    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.find_edge(u, v).is_some()
    }

    /// The other endpoint of `e`.
    #[inline]
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn shares_endpoint(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// `f` is a 1-neighbor of `e`: distinct edges sharing an endpoint.
    pub fn is_one_neighbor(&self, e: EdgeId, f: EdgeId) -> bool {
        e != f && self.shares_endpoint(e, f)
    }

    /// `f` is a 2-neighbor of `e`: disjoint edges joined by an edge.
    pub fn is_two_neighbor(&self, e: EdgeId, f: EdgeId) -> bool {
        if e == f || self.shares_endpoint(e, f) {
            return false;
        }
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        self.has_edge(a, c) || self.has_edge(a, d) || self.has_edge(b, c) || self.has_edge(b, d)
    }

    /// Distance between `e` and `f` in the line graph, `None` when they lie in
    /// different components. The line graph itself is never built: the
    /// distance is one more than the shortest vertex distance between the
    /// endpoint pairs.
    pub fn edge_distance(&self, e: EdgeId, f: EdgeId) -> Result<Option<usize>, GraphError> {
        self.check_edge(e)?;
        self.check_edge(f)?;
        if e == f {
            return Ok(Some(0));
        }
        if self.shares_endpoint(e, f) {
            return Ok(Some(1));
        }
        if self.is_two_neighbor(e, f) {
            return Ok(Some(2));
        }
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in [a, b] {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            if x == c || x == d {
                return Ok(Some(dist[x] + 1));
            }
            for &(y, _) in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// Connected components as vertex lists, each in BFS order from its
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let x = comp[head];
                head += 1;
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Edge indices in breadth-first discovery order, one component after
    /// another starting from vertex 0.
    pub fn bfs_edge_order(&self) -> Vec<EdgeId> {
        let mut order = Vec::with_capacity(self.edges.len());
        let mut taken = vec![false; self.edges.len()];
        for comp in self.components() {
            for &x in &comp {
                for &(_, e) in &self.adj[x] {
                    if !taken[e] {
                        taken[e] = true;
                        order.push(e);
                    }
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Subgraph induced by `vertices`; returns it with the map from new to
    /// old vertex indices. New vertices follow the order of `vertices`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let mut index = vec![usize::MAX; self.n];
        let mut order = Vec::with_capacity(vertices.len());
        for &v in vertices {
            self.check_vertex(v)?;
            if index[v] == usize::MAX {
                index[v] = order.len();
                order.push(v);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Ok((Graph::new(order.len(), edges)?, order))
    }
}

/// Parses the edge-list format: optional `#` comment lines, a header
/// `n m`, then exactly `m` lines `u v`. Blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, kind| GraphError::Parse { line, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
    let (n, m) = parse_pair(header).ok_or_else(|| err(hline, ParseErrorKind::MalformedHeader(header.into())))?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = hline;
    for (lno, line) in lines {
        last_line = lno;
        if edges.len() == m {
            return Err(err(
                lno,
                ParseErrorKind::EdgeCount {
                    expected: m,
                    found: m + 1,
                },
            ));
        }
        let (u, v) = parse_pair(line).ok_or_else(|| err(lno, ParseErrorKind::MalformedEdge(line.into())))?;
        for w in [u, v] {
            if w >= n {
                return Err(err(lno, ParseErrorKind::VertexOutOfRange { vertex: w, n }));
            }
        }
        if u == v {
            return Err(err(lno, ParseErrorKind::SelfLoop(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(lno, ParseErrorKind::DuplicateEdge(u, v)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::EdgeCount {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    Graph::new(n, edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Canonical rendering: header plus one `u v` line per edge, no comments.
pub fn render_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.edge_count() + 1));
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn degree_examples() {
        let p3 = generators::path(3).unwrap();
        assert_eq!(p3.degree(1).unwrap(), 2);
        let k4 = generators::complete(4).unwrap();
        assert!((0..4).all(|v| k4.degree(v).unwrap() == 3));
        let k1 = generators::path(1).unwrap();
        assert_eq!(k1.degree(0).unwrap(), 0);
        assert!(k1.degree(1).is_err());
    }

    #[test]
    fn edge_distance_examples() {
        let p4 = generators::path(4).unwrap();
        assert_eq!(p4.edge_distance(0, 2).unwrap(), Some(2));
        let p3 = generators::path(3).unwrap();
        assert_eq!(p3.edge_distance(0, 1).unwrap(), Some(1));
        assert_eq!(p3.edge_distance(1, 1).unwrap(), Some(0));
        let two_k2 = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.edge_distance(0, 1).unwrap(), None);
        let p7 = generators::path(7).unwrap();
        assert_eq!(p7.edge_distance(0, 5).unwrap(), Some(5));
        assert!(p7.edge_distance(0, 6).is_err());
    }

    #[test]
    fn parse_examples() {
        let g = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, generators::path(3).unwrap());
        let commented = "# a path\n3 2\n# middle\n0 1\n1 2\n";
        assert_eq!(parse_graph(commented).unwrap(), g);
        assert_eq!(render_graph(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_graph("2 1\n0 0").unwrap_err();
        assert_eq!(
            e,
            GraphError::Parse {
                line: 2,
                kind: ParseErrorKind::SelfLoop(0)
            }
        );
        let e = parse_graph("# c\n3 x\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, kind: ParseErrorKind::MalformedHeader(_) }));
        let e = parse_graph("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, kind: ParseErrorKind::DuplicateEdge(1, 0) }));
        let e = parse_graph("3 1\n0 3\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 2, kind: ParseErrorKind::VertexOutOfRange { vertex: 3, n: 3 } }));
        let e = parse_graph("3 2\n0 1\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { kind: ParseErrorKind::EdgeCount { expected: 2, found: 1 }, .. }));
        let e = parse_graph("3 1\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { line: 3, kind: ParseErrorKind::EdgeCount { .. } }));
        let e = parse_graph("# only comments\n").unwrap_err();
        assert!(matches!(e, GraphError::Parse { kind: ParseErrorKind::MissingHeader, .. }));
        assert!(parse_graph("3 1\n0 1 2\n").is_err());
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(matches!(
            Graph::new(2, vec![(0, 0)]),
            Err(GraphError::SelfLoop { edge: 0, vertex: 0 })
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { edge: 1, first: 0, .. })
        ));
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_order() {
        let c6 = generators::cycle(6).unwrap();
        let (h, map) = c6.induced_subgraph(&[3, 4, 5]).unwrap();
        assert_eq!(map, vec![3, 4, 5]);
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
    }
}
