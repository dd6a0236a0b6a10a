//! Instance generators. Everything random is driven by a `ChaCha8Rng` seeded
//! from a `u64`, so a seed always reproduces the same graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError, Vertex};

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)).collect())
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Star on `n` vertices with center 0.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("star needs n >= 1"));
    }
    Graph::new(n, (1..n).map(|i| (0, i)).collect())
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(invalid("complete bipartite graph needs both parts nonempty"));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::new(a + b, edges)
}

/// Circulant graph: vertex `i` is joined to `i ± d (mod n)` for each offset.
/// Offsets must lie in `1..=n/2`; an offset of exactly `n/2` contributes a
/// perfect matching.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("circulant needs n >= 3"));
    }
    let mut offs = offsets.to_vec();
    offs.sort_unstable();
    offs.dedup();
    if offs.is_empty() || offs.iter().any(|&d| d == 0 || 2 * d > n) {
        return Err(invalid(format!("circulant offsets must lie in 1..={}", n / 2)));
    }
    let mut edges = Vec::new();
    for &d in &offs {
        for i in 0..n {
            let j = (i + d) % n;
            if 2 * d == n && j < i {
                continue;
            }
            edges.push((i, j));
        }
    }
    Graph::new(n, edges)
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).expect("petersen graph is simple")
}

pub fn hypercube(d: u32) -> Result<Graph, GraphError> {
    if d > 20 {
        return Err(invalid("hypercube dimension capped at 20"));
    }
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(n * d as usize / 2);
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::new(n, edges)
}

/// Decodes a Prüfer sequence of length `n - 2` into the labeled tree on `n`
/// vertices it encodes. Edges come out in decoding order.
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("tree needs n >= 1"));
    }
    if n == 1 {
        return if seq.is_empty() {
            Ok(Graph::empty(1))
        } else {
            Err(invalid("prufer sequence for n = 1 must be empty"))
        };
    }
    if seq.len() != n - 2 {
        return Err(invalid(format!("prufer sequence for n = {n} must have length {}", n - 2)));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    // Linear-time decoding with a moving pointer to the smallest leaf.
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, edges)
}

/// Uniformly random labeled tree on `n` vertices (random Prüfer sequence).
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("tree needs n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(&seq, n)
}

/// Random recursive tree whose maximum degree never exceeds `max_degree`:
/// vertex `i` attaches to a uniformly chosen earlier vertex that still has
/// spare degree.
pub fn random_tree_bounded(n: usize, max_degree: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("tree needs n >= 1"));
    }
    if n > 2 && max_degree < 2 {
        return Err(invalid("trees with more than two vertices need max_degree >= 2"));
    }
    if n == 2 && max_degree < 1 {
        return Err(invalid("an edge needs max_degree >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    let mut open: Vec<Vertex> = vec![0];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        edges.push((parent, v));
        degree[parent] += 1;
        degree[v] = 1;
        if degree[parent] == max_degree {
            open.swap_remove(slot);
        }
        if max_degree > 1 {
            open.push(v);
        }
    }
    Graph::new(n, edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("edge probability must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Iterator over every Prüfer sequence for `n` vertices, in lexicographic
/// order; decoding each one visits every labeled tree exactly once.
pub fn all_labeled_trees(n: usize) -> impl Iterator<Item = Graph> {
    let len = n.saturating_sub(2);
    let mut seq = vec![0usize; len];
    let mut done = n == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let g = prufer_decode(&seq, n).expect("valid prufer sequence");
        // odometer increment
        done = true;
        for i in (0..len).rev() {
            seq[i] += 1;
            if seq[i] < n {
                done = false;
                break;
            }
            seq[i] = 0;
        }
        Some(g)
    })
}

/// Every labeled simple graph on `n` vertices with at most `max_edges` edges.
/// Edges are drawn from the lexicographic list of vertex pairs.
pub fn all_graphs(n: usize, max_edges: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let max_edges = max_edges.min(pairs.len());
    (0..=max_edges).flat_map(move |m| {
        let pairs = pairs.clone();
        Combinations::new(pairs.len(), m)
            .map(move |idx| Graph::new(n, idx.iter().map(|&i| pairs[i]).collect()).expect("simple"))
    })
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            first: true,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        self.done = true;
        None
    }
}
