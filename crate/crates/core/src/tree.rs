//! Rooted views of trees.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has no vertices")]
    Empty,
    #[error("not a tree: graph is disconnected ({reached} of {n} vertices reachable from the root)")]
    Disconnected { reached: usize, n: usize },
    #[error("not a tree: edge {edge} closes a cycle")]
    Cycle { edge: EdgeId },
}

/// A tree together with a root. Parent links and child lists are derived by
/// breadth-first search; children of a vertex appear in the order of its
/// incident edges in the underlying graph.
#[derive(Debug, Clone)]
pub struct RootedTree {
    graph: Graph,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    parent_edge: Vec<Option<EdgeId>>,
    children: Vec<Vec<(Vertex, EdgeId)>>,
    order: Vec<Vertex>,
    depth: Vec<usize>,
}

pub fn root_tree(g: &Graph, r: Vertex) -> Result<RootedTree, TreeError> {
    RootedTree::new(g.clone(), r)
}

impl RootedTree {
    pub fn new(graph: Graph, root: Vertex) -> Result<Self, TreeError> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        graph.check_vertex(root)?;
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        depth[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(w, e) in graph.incident(v) {
                if Some(e) == parent_edge[v] {
                    continue;
                }
                if depth[w] != usize::MAX {
                    return Err(TreeError::Cycle { edge: e });
                }
                depth[w] = depth[v] + 1;
                parent[w] = Some(v);
                parent_edge[w] = Some(e);
                children[v].push((w, e));
                order.push(w);
            }
        }
        if order.len() < n {
            return Err(TreeError::Disconnected {
                reached: order.len(),
                n,
            });
        }
        Ok(RootedTree {
            graph,
            root,
            parent,
            parent_edge,
            children,
            order,
            depth,
        })
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn root(&self) -> Vertex {
        self.root
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    #[inline]
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    #[inline]
    pub fn parent_edge(&self, v: Vertex) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    /// Children of `v` with the connecting edges, in input edge order.
    #[inline]
    pub fn children(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.children[v]
    }

    /// `chd(v)`.
    #[inline]
    pub fn child_count(&self, v: Vertex) -> usize {
        self.children[v].len()
    }

    #[inline]
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    /// Vertices in breadth-first order from the root; reversing it gives a
    /// valid post-order for bottom-up passes.
    #[inline]
    pub fn bfs_order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    /// Vertices of the subtree `T_v` in breadth-first order.
    pub fn subtree_vertices(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            out.extend(self.children[x].iter().map(|&(w, _)| w));
        }
        out
    }

    /// Edges of `T_v` in breadth-first order.
    pub fn subtree_edges(&self, v: Vertex) -> Vec<EdgeId> {
        self.subtree_vertices(v)
            .into_iter()
            .flat_map(|x| self.children[x].iter().map(|&(_, e)| e))
            .collect()
    }
}
