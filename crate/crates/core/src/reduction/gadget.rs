use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coloring::Color;
use crate::graph::{EdgeId, Graph, Vertex};

use super::ReductionError;

/// Edge-replacement gadgets, one family per degree class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GadgetKind {
    /// Odd `k >= 3`: two hubs `u1`, `v1` joined through `(k-1)/2` middle
    /// vertices of degree 2.
    #[serde(rename = "B")]
    OddJoin,
    /// Even `k >= 6`: as the odd join with `(k-2)/2` middle vertices plus an
    /// edge between the first two.
    #[serde(rename = "Q")]
    EvenJoin,
    /// `k = 4`: a triangle with three pendant paths closing induced 7-cycles.
    #[serde(rename = "R")]
    Quartic,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 3] = [GadgetKind::OddJoin, GadgetKind::EvenJoin, GadgetKind::Quartic];

    /// The gadget used when reducing a `k`-regular graph.
    pub fn for_degree(k: usize) -> Result<GadgetKind, ReductionError> {
        match k {
            4 => Ok(GadgetKind::Quartic),
            k if k >= 3 && k % 2 == 1 => Ok(GadgetKind::OddJoin),
            k if k >= 6 => Ok(GadgetKind::EvenJoin),
            _ => Err(ReductionError::UnsupportedDegree(k)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GadgetKind::OddJoin => "B",
            GadgetKind::EvenJoin => "Q",
            GadgetKind::Quartic => "R",
        }
    }

    fn accepts(self, k: usize) -> bool {
        match self {
            GadgetKind::OddJoin => k >= 3 && k % 2 == 1,
            GadgetKind::EvenJoin => k >= 6 && k % 2 == 0,
            GadgetKind::Quartic => k == 4,
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GadgetKind {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b" | "odd" => Ok(GadgetKind::OddJoin),
            "q" | "even" => Ok(GadgetKind::EvenJoin),
            "r" | "quartic" => Ok(GadgetKind::Quartic),
            _ => Err(ReductionError::UnknownKind(s.to_string())),
        }
    }
}

/// A gadget graph with its two attachment vertices and named edges.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub k: usize,
    pub graph: Graph,
    /// Attachment vertices, always 0 and 1.
    pub u: Vertex,
    pub v: Vertex,
    /// Edge names in edge-index order.
    pub tags: Vec<(String, EdgeId)>,
    /// The two edges at the attachment vertices (`uu1`/`vv1` or `h1`/`h2`).
    pub boundary: (EdgeId, EdgeId),
}

impl Gadget {
    pub fn edge_named(&self, name: &str) -> Option<EdgeId> {
        self.tags.iter().find(|(n, _)| n == name).map(|&(_, e)| e)
    }

    /// Edges other than the two boundary edges.
    pub fn interior_edges(&self) -> Vec<EdgeId> {
        (0..self.graph.edge_count())
            .filter(|&e| e != self.boundary.0 && e != self.boundary.1)
            .collect()
    }

    /// Reference semistrong coloring with boundary color `c`: for the joins,
    /// boundary edges get `c` and the others the remaining colors in edge
    /// order; for the quartic gadget, the fixed four-class pattern with its
    /// boundary class relabeled to `c`.
    pub fn pattern(&self, c: Color) -> Vec<Color> {
        let k = self.k as Color;
        let others: Vec<Color> = (1..=k).filter(|&x| x != c).collect();
        match self.kind {
            GadgetKind::OddJoin | GadgetKind::EvenJoin => {
                let mut colors = vec![c; self.graph.edge_count()];
                for (slot, e) in self.interior_edges().into_iter().enumerate() {
                    colors[e] = others[slot];
                }
                colors
            }
            GadgetKind::Quartic => {
                let classes: [(usize, &[&str]); 4] = [
                    (3, &["h1", "h2", "e4", "e5", "e6"]),
                    (0, &["e1", "g3", "g4", "f6", "f1"]),
                    (1, &["e2", "g5", "g6", "f2", "f3"]),
                    (2, &["e3", "g1", "g2", "f4", "f5"]),
                ];
                let mut colors = vec![0; self.graph.edge_count()];
                for (slot, names) in classes {
                    let color = if slot == 3 { c } else { others[slot] };
                    for name in names {
                        colors[self.edge_named(name).expect("tag exists")] = color;
                    }
                }
                colors
            }
        }
    }

    /// The gadget with `k - 1` pendant edges added at each attachment
    /// vertex, so that both have degree `k` as in the reduced graph.
    pub fn augmented(&self) -> Graph {
        let base = self.graph.vertex_count();
        let extra = self.k - 1;
        let mut edges = self.graph.edges().to_vec();
        for i in 0..extra {
            edges.push((self.u, base + i));
        }
        for i in 0..extra {
            edges.push((self.v, base + extra + i));
        }
        Graph::new(base + 2 * extra, edges).expect("pendants are fresh vertices")
    }
}

/// Builds the gadget of `kind` for palette size `k`.
pub fn build_gadget(kind: GadgetKind, k: usize) -> Result<Gadget, ReductionError> {
    if !kind.accepts(k) {
        return Err(ReductionError::IncompatibleGadget { kind, k });
    }
    match kind {
        GadgetKind::OddJoin => Ok(join(kind, k, (k - 1) / 2, false)),
        GadgetKind::EvenJoin => Ok(join(kind, k, (k - 2) / 2, true)),
        GadgetKind::Quartic => Ok(quartic()),
    }
}

/// Vertices: u=0, v=1, u1=2, v1=3, w_i = 3+i.
fn join(kind: GadgetKind, k: usize, middles: usize, bridge: bool) -> Gadget {
    let (u, v, u1, v1) = (0, 1, 2, 3);
    let w = |i: usize| 3 + i;
    let mut edges = vec![(u, u1), (v, v1)];
    let mut tags = vec!["uu1".to_string(), "vv1".to_string()];
    for i in 1..=middles {
        edges.push((u1, w(i)));
        tags.push(format!("u1w{i}"));
        edges.push((v1, w(i)));
        tags.push(format!("v1w{i}"));
    }
    if bridge {
        edges.push((w(1), w(2)));
        tags.push("w1w2".to_string());
    }
    let graph = Graph::new(4 + middles, edges).expect("join gadget is simple");
    Gadget {
        kind,
        k,
        graph,
        u,
        v,
        tags: tags.into_iter().enumerate().map(|(e, n)| (n, e)).collect(),
        boundary: (0, 1),
    }
}

/// Vertices: u=0, v=1, w1..w3 = 2..4, x1..x3 = 5..7, y1..y6 = 8..13,
/// z1..z3 = 14..16. Edges in the order e1..e6, f1..f6, g1..g6, h1, h2.
fn quartic() -> Gadget {
    let (u, v) = (0, 1);
    let w = |i: usize| 1 + i;
    let x = |i: usize| 4 + i;
    let y = |i: usize| 7 + i;
    let z = |i: usize| 13 + i;
    let named: Vec<(&str, (Vertex, Vertex))> = vec![
        ("e1", (w(1), w(2))),
        ("e2", (w(2), w(3))),
        ("e3", (w(3), w(1))),
        ("e4", (w(1), x(1))),
        ("e5", (w(2), x(2))),
        ("e6", (w(3), x(3))),
        ("f1", (x(1), y(1))),
        ("f2", (x(1), y(2))),
        ("f3", (x(2), y(3))),
        ("f4", (x(2), y(4))),
        ("f5", (x(3), y(5))),
        ("f6", (x(3), y(6))),
        ("g1", (z(3), y(1))),
        ("g2", (z(1), y(2))),
        ("g3", (z(1), y(3))),
        ("g4", (z(2), y(4))),
        ("g5", (z(2), y(5))),
        ("g6", (z(3), y(6))),
        ("h1", (u, z(1))),
        ("h2", (v, z(2))),
    ];
    let graph = Graph::new(17, named.iter().map(|&(_, e)| e).collect()).expect("quartic gadget is simple");
    Gadget {
        kind: GadgetKind::Quartic,
        k: 4,
        graph,
        u,
        v,
        tags: named.iter().enumerate().map(|(e, &(n, _))| (n.to_string(), e)).collect(),
        boundary: (18, 19),
    }
}
