//! Matching classes, edge-coloring verification and the 1-vertex relation.
//!
//! A color class `M` is judged through `G_M`, the subgraph induced by the
//! endpoints of `M`. From strongest to weakest: induced (every vertex of
//! `G_M` is pendant), semistrong (every edge of `M` has a pendant endpoint),
//! uniquely restricted (no `M`-alternating cycle), plain matching.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Vertex};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coloring has {found} entries but the graph has {expected} edges")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {edge} has color {color} outside the palette 1..={palette}")]
    ColorOutOfPalette {
        edge: EdgeId,
        color: Color,
        palette: Color,
    },
    #[error("color class {color} is not a matching")]
    NotAMatching { color: Color },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Which matching predicate every color class must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringKind {
    Proper,
    UniquelyRestricted,
    Semistrong,
    Strong,
}

impl ColoringKind {
    pub const ALL: [ColoringKind; 4] = [
        ColoringKind::Proper,
        ColoringKind::UniquelyRestricted,
        ColoringKind::Semistrong,
        ColoringKind::Strong,
    ];

    /// The weakest matching class a color class must reach.
    pub fn required_class(self) -> MatchingClass {
        match self {
            ColoringKind::Proper => MatchingClass::Matching,
            ColoringKind::UniquelyRestricted => MatchingClass::UniquelyRestricted,
            ColoringKind::Semistrong => MatchingClass::Semistrong,
            ColoringKind::Strong => MatchingClass::Induced,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ColoringKind::Proper => "proper",
            ColoringKind::UniquelyRestricted => "uniquely-restricted",
            ColoringKind::Semistrong => "semistrong",
            ColoringKind::Strong => "strong",
        }
    }
}

impl fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ColoringKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "proper" => Ok(ColoringKind::Proper),
            "uniquely-restricted" | "ur" => Ok(ColoringKind::UniquelyRestricted),
            "semistrong" | "ss" => Ok(ColoringKind::Semistrong),
            "strong" | "induced" => Ok(ColoringKind::Strong),
            other => Err(format!(
                "unknown coloring kind {other:?} (expected proper, uniquely-restricted, semistrong or strong)"
            )),
        }
    }
}

/// Strongest property an edge set satisfies. Levels are totally ordered and
/// each level implies every weaker one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingClass {
    NotAMatching,
    Matching,
    UniquelyRestricted,
    Semistrong,
    Induced,
}

/// A total edge coloring with colors drawn from `1..=palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<Color>,
    palette: Color,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>, palette: Color) -> Result<Self, ColoringError> {
        if let Some((edge, &color)) = colors.iter().enumerate().find(|&(_, &c)| c == 0 || c > palette) {
            return Err(ColoringError::ColorOutOfPalette { edge, color, palette });
        }
        Ok(EdgeColoring { colors, palette })
    }

    /// Palette taken to be the largest color present.
    pub fn from_colors(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let palette = colors.iter().copied().max().unwrap_or(0);
        EdgeColoring::new(colors, palette)
    }

    #[inline]
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    #[inline]
    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen = vec![false; self.palette as usize + 1];
        self.colors.iter().filter(|&&c| !std::mem::replace(&mut seen[c as usize], true)).count()
    }

    pub fn check_against(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.edge_count() {
            return Err(ColoringError::LengthMismatch {
                expected: g.edge_count(),
                found: self.colors.len(),
            });
        }
        Ok(())
    }

    /// Edge indices grouped by color; entry `c` lists the class of color `c`
    /// (entry 0 is always empty).
    pub fn classes(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.palette as usize + 1];
        for (e, &c) in self.colors.iter().enumerate() {
            out[c as usize].push(e);
        }
        out
    }

    /// Applies `map` (indexed by old color) to every edge.
    pub fn relabel(&self, map: &[Color], palette: Color) -> Result<Self, ColoringError> {
        EdgeColoring::new(self.colors.iter().map(|&c| map[c as usize]).collect(), palette)
    }
}

/// `G_M` together with the map from its vertices back to `g`.
pub fn induced_on_endpoints(g: &Graph, matching: &[EdgeId]) -> Result<(Graph, Vec<Vertex>), GraphError> {
    let mut vertices = Vec::with_capacity(2 * matching.len());
    for &e in matching {
        g.check_edge(e)?;
        let (u, v) = g.edge(e);
        vertices.push(u);
        vertices.push(v);
    }
    g.induced_subgraph(&vertices)
}

/// Reusable per-graph buffers for analysing one edge set at a time.
struct ClassScratch {
    /// Edge index + 1 of the class edge covering a vertex, 0 if uncovered.
    cover: Vec<usize>,
}

impl ClassScratch {
    fn new(n: usize) -> Self {
        ClassScratch { cover: vec![0; n] }
    }

    /// Marks the endpoints of `edges`. Returns the first edge that collides
    /// with an already covered vertex, leaving the marks of the edges before
    /// it in place (call `clear` either way).
    fn mark(&mut self, g: &Graph, edges: &[EdgeId]) -> Result<(), (EdgeId, EdgeId)> {
        for &e in edges {
            let (u, v) = g.edge(e);
            for w in [u, v] {
                if self.cover[w] != 0 {
                    return Err((e, self.cover[w] - 1));
                }
            }
            self.cover[u] = e + 1;
            self.cover[v] = e + 1;
        }
        Ok(())
    }

    fn clear(&mut self, g: &Graph, edges: &[EdgeId]) {
        for &e in edges {
            let (u, v) = g.edge(e);
            self.cover[u] = 0;
            self.cover[v] = 0;
        }
    }

    /// Degree of `x` in `G_M` (requires `mark`).
    #[inline]
    fn induced_degree(&self, g: &Graph, x: Vertex) -> usize {
        g.neighbors(x).filter(|&y| self.cover[y] != 0).count()
    }

    #[inline]
    fn mate(&self, g: &Graph, x: Vertex) -> Vertex {
        g.opposite(self.cover[x] - 1, x)
    }

    /// Searches for an alternating cycle through class edge `e`; returns the
    /// cycle's vertices in order, starting at an endpoint of `e`. Only
    /// vertices with `alive` set take part.
    fn alternating_cycle_through(&self, g: &Graph, e: EdgeId, alive: &[bool]) -> Option<Vec<Vertex>> {
        let (a, b) = g.edge(e);
        if !alive[a] || !alive[b] {
            return None;
        }
        let mut on_path = vec![false; g.vertex_count()];
        let mut path = vec![a, b];
        on_path[a] = true;
        on_path[b] = true;
        if self.extend_alternating(g, a, b, alive, &mut on_path, &mut path) {
            Some(path)
        } else {
            None
        }
    }

    /// `path` ends at `cur`, reached through a class edge. Tries a non-class
    /// edge onward, closing at `start` or continuing through the next class
    /// edge.
    fn extend_alternating(
        &self,
        g: &Graph,
        start: Vertex,
        cur: Vertex,
        alive: &[bool],
        on_path: &mut [bool],
        path: &mut Vec<Vertex>,
    ) -> bool {
        let cur_mate = self.mate(g, cur);
        for y in g.neighbors(cur) {
            if y == cur_mate || self.cover[y] == 0 || !alive[y] {
                continue;
            }
            if y == start {
                return true;
            }
            if on_path[y] {
                continue;
            }
            let z = self.mate(g, y);
            if on_path[z] || !alive[z] {
                continue;
            }
            on_path[y] = true;
            on_path[z] = true;
            path.push(y);
            path.push(z);
            if self.extend_alternating(g, start, z, alive, on_path, path) {
                return true;
            }
            path.truncate(path.len() - 2);
            on_path[y] = false;
            on_path[z] = false;
        }
        false
    }

    /// Vertices that can lie on an alternating cycle: repeatedly discard class
    /// edges having a pendant endpoint in what remains of `G_M`.
    fn alternating_core(&self, g: &Graph, edges: &[EdgeId]) -> Vec<bool> {
        let n = g.vertex_count();
        let mut alive = vec![false; n];
        let mut deg = vec![0usize; n];
        for &e in edges {
            let (u, v) = g.edge(e);
            alive[u] = true;
            alive[v] = true;
        }
        for &e in edges {
            let (u, v) = g.edge(e);
            deg[u] = self.induced_degree(g, u);
            deg[v] = self.induced_degree(g, v);
        }
        let mut stack: Vec<Vertex> = edges
            .iter()
            .flat_map(|&e| {
                let (u, v) = g.edge(e);
                [u, v]
            })
            .filter(|&x| deg[x] <= 1)
            .collect();
        while let Some(x) = stack.pop() {
            if !alive[x] {
                continue;
            }
            let y = self.mate(g, x);
            for w in [x, y] {
                if !alive[w] {
                    continue;
                }
                alive[w] = false;
                for z in g.neighbors(w) {
                    if alive[z] {
                        deg[z] -= 1;
                        if deg[z] <= 1 {
                            stack.push(z);
                        }
                    }
                }
            }
        }
        alive
    }

    /// Classifies a marked matching.
    fn classify_marked(&self, g: &Graph, edges: &[EdgeId]) -> MatchingClass {
        let mut induced = true;
        let mut semistrong = true;
        for &e in edges {
            let (u, v) = g.edge(e);
            let du = self.induced_degree(g, u);
            let dv = self.induced_degree(g, v);
            if du > 1 || dv > 1 {
                induced = false;
            }
            if du > 1 && dv > 1 {
                semistrong = false;
            }
        }
        if induced {
            return MatchingClass::Induced;
        }
        if semistrong {
            return MatchingClass::Semistrong;
        }
        let alive = self.alternating_core(g, edges);
        if edges.iter().any(|&e| self.alternating_cycle_through(g, e, &alive).is_some()) {
            MatchingClass::Matching
        } else {
            MatchingClass::UniquelyRestricted
        }
    }
}

/// Strongest matching class of the edge set `matching` (duplicates ignored).
pub fn classify_matching(g: &Graph, matching: &[EdgeId]) -> Result<MatchingClass, GraphError> {
    let mut edges = matching.to_vec();
    for &e in &edges {
        g.check_edge(e)?;
    }
    edges.sort_unstable();
    edges.dedup();
    let mut scratch = ClassScratch::new(g.vertex_count());
    let class = match scratch.mark(g, &edges) {
        Ok(()) => scratch.classify_marked(g, &edges),
        Err(_) => MatchingClass::NotAMatching,
    };
    scratch.clear(g, &edges);
    Ok(class)
}

/// An `M`-alternating cycle if one exists (vertices in cycle order).
pub fn find_alternating_cycle(g: &Graph, matching: &[EdgeId]) -> Result<Option<Vec<Vertex>>, ColoringError> {
    for &e in matching {
        g.check_edge(e)?;
    }
    let mut scratch = ClassScratch::new(g.vertex_count());
    if scratch.mark(g, matching).is_err() {
        return Err(ColoringError::NotAMatching { color: 0 });
    }
    let alive = scratch.alternating_core(g, matching);
    let found = matching.iter().find_map(|&e| scratch.alternating_cycle_through(g, e, &alive));
    Ok(found)
}

/// Endpoints of `e` that have degree 1 in the subgraph induced by the
/// endpoints of all edges sharing `e`'s color.
pub fn one_vertices(g: &Graph, phi: &EdgeColoring, e: EdgeId) -> Result<Vec<Vertex>, ColoringError> {
    phi.check_against(g)?;
    g.check_edge(e)?;
    let color = phi.color(e);
    let class: Vec<EdgeId> = (0..g.edge_count()).filter(|&f| phi.color(f) == color).collect();
    let mut scratch = ClassScratch::new(g.vertex_count());
    let marked = scratch.mark(g, &class);
    let result = match marked {
        Ok(()) => {
            let (u, v) = g.edge(e);
            Ok([u, v]
                .into_iter()
                .filter(|&x| scratch.induced_degree(g, x) == 1)
                .collect())
        }
        Err(_) => Err(ColoringError::NotAMatching { color }),
    };
    scratch.clear(g, &class);
    result
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationReason {
    /// The class is not a matching: `edge` meets `other` at a vertex.
    SharedEndpoint { other: EdgeId },
    /// Neither endpoint is pendant in the class's induced subgraph.
    NoOneVertex,
    /// An endpoint has a second neighbor in the class's induced subgraph.
    NotInduced { vertex: Vertex },
    /// `edge` lies on an alternating cycle of its class.
    AlternatingCycle { cycle: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub edge: EdgeId,
    pub color: Color,
    pub reason: ViolationReason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {} (color {}): ", self.edge, self.color)?;
        match &self.reason {
            ViolationReason::SharedEndpoint { other } => write!(f, "shares an endpoint with edge {other}"),
            ViolationReason::NoOneVertex => write!(f, "has no 1-vertex"),
            ViolationReason::NotInduced { vertex } => {
                write!(f, "endpoint {vertex} has another neighbor in its color class")
            }
            ViolationReason::AlternatingCycle { cycle } => write!(f, "lies on alternating cycle {cycle:?}"),
        }
    }
}

/// Result of a verification: `violation` is `None` iff the coloring passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub kind: ColoringKind,
    pub violation: Option<Violation>,
}

impl Verification {
    #[inline]
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every color class against `kind`'s matching predicate. The
/// reported violation is the lowest-indexed offending edge.
pub fn verify_coloring(g: &Graph, phi: &EdgeColoring, kind: ColoringKind) -> Result<Verification, ColoringError> {
    phi.check_against(g)?;
    let classes = phi.classes();
    let mut scratch = ClassScratch::new(g.vertex_count());
    let mut best: Option<Violation> = None;
    for (color, edges) in classes.iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        let color = color as Color;
        let found = match scratch.mark(g, edges) {
            Err((edge, other)) => {
                // the class edge with the lower index is the first offender
                Some(Violation {
                    edge: edge.min(other),
                    color,
                    reason: ViolationReason::SharedEndpoint {
                        other: edge.max(other),
                    },
                })
            }
            Ok(()) => class_violation(&scratch, g, edges, color, kind),
        };
        scratch.clear(g, edges);
        if let Some(v) = found {
            if best.as_ref().map_or(true, |b| v.edge < b.edge) {
                best = Some(v);
            }
        }
    }
    Ok(Verification { kind, violation: best })
}

fn class_violation(
    scratch: &ClassScratch,
    g: &Graph,
    edges: &[EdgeId],
    color: Color,
    kind: ColoringKind,
) -> Option<Violation> {
    let make = |edge, reason| Some(Violation { edge, color, reason });
    match kind {
        ColoringKind::Proper => None,
        ColoringKind::Strong => edges.iter().find_map(|&e| {
            let (u, v) = g.edge(e);
            [u, v]
                .into_iter()
                .find(|&x| scratch.induced_degree(g, x) > 1)
                .and_then(|x| make(e, ViolationReason::NotInduced { vertex: x }))
        }),
        ColoringKind::Semistrong => edges.iter().find_map(|&e| {
            let (u, v) = g.edge(e);
            if scratch.induced_degree(g, u) > 1 && scratch.induced_degree(g, v) > 1 {
                make(e, ViolationReason::NoOneVertex)
            } else {
                None
            }
        }),
        ColoringKind::UniquelyRestricted => {
            let alive = scratch.alternating_core(g, edges);
            edges.iter().find_map(|&e| {
                scratch
                    .alternating_cycle_through(g, e, &alive)
                    .and_then(|cycle| make(e, ViolationReason::AlternatingCycle { cycle }))
            })
        }
    }
}

/// Semistrong check through the per-edge formulation: every edge must have
/// at least one 1-vertex (and every class must be a matching).
pub fn verify_semistrong_by_one_vertices(g: &Graph, phi: &EdgeColoring) -> Result<Verification, ColoringError> {
    phi.check_against(g)?;
    let mut scratch = ClassScratch::new(g.vertex_count());
    let mut violation: Option<Violation> = None;
    for (color, class) in phi.classes().iter().enumerate() {
        let color = color as Color;
        let matching = scratch.mark(g, class).is_ok();
        for &e in class {
            if violation.as_ref().is_some_and(|v| v.edge < e) {
                break;
            }
            let reason = if matching {
                let (u, v) = g.edge(e);
                (scratch.induced_degree(g, u) != 1 && scratch.induced_degree(g, v) != 1)
                    .then_some(ViolationReason::NoOneVertex)
            } else {
                // 1-vertices are only defined on matchings; report at the
                // edges that actually collide.
                class
                    .iter()
                    .find(|&&f| f != e && g.shares_endpoint(e, f))
                    .map(|&other| ViolationReason::SharedEndpoint { other })
            };
            if let Some(reason) = reason {
                violation = Some(Violation { edge: e, color, reason });
                break;
            }
        }
        scratch.clear(g, class);
    }
    Ok(Verification {
        kind: ColoringKind::Semistrong,
        violation,
    })
}

/// A graph has a semistrong 2-edge-coloring iff every component is a path on
/// at most five vertices.
pub fn is_semistrong_2_colorable(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let edges: usize = comp.iter().map(|&v| g.incident(v).len()).sum::<usize>() / 2;
        comp.len() <= 5 && edges + 1 == comp.len() && comp.iter().all(|&v| g.incident(v).len() <= 2)
    })
}

/// Parses a coloring file: optional `#` comments, then one `i c` line per
/// edge (any order, each index exactly once, `c >= 1`). The palette is
/// the largest color present.
pub fn parse_coloring(text: &str, edge_count: usize) -> Result<EdgeColoring, ColoringError> {
    let mut colors = vec![0 as Color; edge_count];
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let lno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        last = lno;
        let err = |msg: String| ColoringError::Parse { line: lno, msg };
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(err(format!("expected \"i c\", got {line:?}")));
        };
        let e: usize = a.parse().map_err(|_| err(format!("bad edge index {a:?}")))?;
        let c: Color = b.parse().map_err(|_| err(format!("bad color {b:?}")))?;
        if e >= edge_count {
            return Err(err(format!("edge index {e} out of range (edge count {edge_count})")));
        }
        if c == 0 {
            return Err(err("colors start at 1".into()));
        }
        if colors[e] != 0 {
            return Err(err(format!("edge {e} colored twice")));
        }
        colors[e] = c;
    }
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        return Err(ColoringError::Parse {
            line: last,
            msg: format!("edge {e} has no color"),
        });
    }
    EdgeColoring::from_colors(colors)
}

/// Canonical rendering: `i c` lines in edge order.
pub fn render_coloring(phi: &EdgeColoring) -> String {
    let mut out = String::with_capacity(8 * phi.len());
    for (e, c) in phi.colors().iter().enumerate() {
        let _ = writeln!(out, "{e} {c}");
    }
    out
}
