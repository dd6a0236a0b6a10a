//! Exhaustive backtracking over edge colorings, parameterized by the class
//! predicate. This is the ground truth the tree dynamic program and the
//! reduction gadgets are checked against, so it never guesses: running out
//! of node budget yields an explicit unknown outcome.
//!
//! Edges are colored in breadth-first discovery order from vertex 0. All
//! four class predicates are hereditary (a subset of a valid class is
//! valid), so each partial class is checked exactly as it grows and every
//! pruned branch is genuinely dead. Complete colorings are re-verified with
//! [`verify_coloring`] before being reported.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{verify_coloring, Color, ColoringKind, EdgeColoring};
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("request mode is {found:?}, this operation needs {expected:?}")]
    ModeMismatch { expected: Mode, found: Mode },
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Decide,
    Minimize,
    Enumerate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of color assignments tried, summed over a whole call.
    pub node_budget: Option<u64>,
    /// Enumeration stops after this many solutions.
    pub solution_cap: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SolveRequest<'g> {
    pub graph: &'g Graph,
    pub kind: ColoringKind,
    pub palette_size: Color,
    pub mode: Mode,
    pub limits: Limits,
    /// Symmetry reduction. For `decide`/`min_colors` colors are introduced in
    /// increasing order; for `enumerate` edge 0 is pinned to color 1.
    pub symmetry: bool,
}

impl<'g> SolveRequest<'g> {
    pub fn decide(graph: &'g Graph, kind: ColoringKind, palette_size: Color) -> Self {
        SolveRequest {
            graph,
            kind,
            palette_size,
            mode: Mode::Decide,
            limits: Limits::default(),
            symmetry: true,
        }
    }

    /// `palette_size` is ignored when minimizing.
    pub fn minimize(graph: &'g Graph, kind: ColoringKind) -> Self {
        SolveRequest {
            mode: Mode::Minimize,
            ..SolveRequest::decide(graph, kind, 1)
        }
    }

    pub fn enumerate(graph: &'g Graph, kind: ColoringKind, palette_size: Color) -> Self {
        SolveRequest {
            mode: Mode::Enumerate,
            ..SolveRequest::decide(graph, kind, palette_size)
        }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.limits.node_budget = Some(nodes);
        self
    }

    pub fn with_cap(mut self, solutions: u64) -> Self {
        self.limits.solution_cap = Some(solutions);
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    fn expect_mode(&self, expected: Mode) -> Result<(), SolveError> {
        if self.mode == expected {
            Ok(())
        } else {
            Err(SolveError::ModeMismatch {
                expected,
                found: self.mode,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Feasible(EdgeColoring),
    Infeasible,
    /// Node budget exhausted before the question was settled.
    Unknown,
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }

    /// `Some(answer)` when settled.
    pub fn known(&self) -> Option<bool> {
        match self {
            Decision::Feasible(_) => Some(true),
            Decision::Infeasible => Some(false),
            Decision::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOutcome {
    pub decision: Decision,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinColors {
    Exact { colors: Color, witness: EdgeColoring },
    /// Budget ran out; every palette below `lower_bound` was refuted.
    Unknown { lower_bound: Color },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinOutcome {
    pub result: MinColors,
    pub nodes: u64,
}

impl MinOutcome {
    pub fn value(&self) -> Option<Color> {
        match self.result {
            MinColors::Exact { colors, .. } => Some(colors),
            MinColors::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationEnd {
    /// Every valid coloring was visited.
    Exhausted,
    /// The solution cap was hit.
    CapReached,
    /// The visitor asked to stop.
    Stopped,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOutcome {
    pub count: u64,
    pub end: EnumerationEnd,
    pub nodes: u64,
}

/// Is there a valid coloring with at most `palette_size` colors?
pub fn decide(req: &SolveRequest<'_>) -> Result<DecideOutcome, SolveError> {
    req.expect_mode(Mode::Decide)?;
    if req.palette_size == 0 {
        return Err(SolveError::EmptyPalette);
    }
    let mut budget = Budget::new(req.limits.node_budget);
    let decision = decide_with(req.graph, req.kind, req.palette_size, req.symmetry, &mut budget);
    Ok(DecideOutcome {
        decision,
        nodes: budget.used,
    })
}

fn decide_with(g: &Graph, kind: ColoringKind, k: Color, symmetry: bool, budget: &mut Budget) -> Decision {
    let sym = if symmetry { Symmetry::FirstUse } else { Symmetry::None };
    let mut search = Search::new(g, kind, k, sym);
    let mut found = None;
    let end = search.run(budget, &mut |colors| {
        found = Some(colors.to_vec());
        ControlFlow::Break(())
    });
    match (found, end) {
        (Some(colors), _) => Decision::Feasible(EdgeColoring::new(colors, k).expect("colors within palette")),
        (None, Stop::Budget) => Decision::Unknown,
        (None, _) => Decision::Infeasible,
    }
}

/// Smallest palette admitting a valid coloring, searched upward from the
/// maximum degree (every class is a matching, so fewer colors never work).
pub fn min_colors(req: &SolveRequest<'_>) -> Result<MinOutcome, SolveError> {
    req.expect_mode(Mode::Minimize)?;
    let g = req.graph;
    if g.edge_count() == 0 {
        return Err(SolveError::NoEdges);
    }
    let mut budget = Budget::new(req.limits.node_budget);
    let lower = g.max_degree().max(1) as Color;
    // one color per edge is valid for every kind
    let upper = g.edge_count() as Color;
    for k in lower..=upper {
        match decide_with(g, req.kind, k, req.symmetry, &mut budget) {
            Decision::Feasible(witness) => {
                return Ok(MinOutcome {
                    result: MinColors::Exact { colors: k, witness },
                    nodes: budget.used,
                })
            }
            Decision::Infeasible => continue,
            Decision::Unknown => {
                return Ok(MinOutcome {
                    result: MinColors::Unknown { lower_bound: k },
                    nodes: budget.used,
                })
            }
        }
    }
    unreachable!("a coloring with one color per edge always exists")
}

/// Visits valid colorings in a deterministic order. The visitor receives the
/// color of every edge (indexed by edge id) and may stop the enumeration.
pub fn enumerate<F>(req: &SolveRequest<'_>, mut visitor: F) -> Result<EnumerateOutcome, SolveError>
where
    F: FnMut(&[Color]) -> ControlFlow<()>,
{
    req.expect_mode(Mode::Enumerate)?;
    if req.palette_size == 0 {
        return Err(SolveError::EmptyPalette);
    }
    let sym = if req.symmetry { Symmetry::PinFirst } else { Symmetry::None };
    let mut search = Search::new(req.graph, req.kind, req.palette_size, sym);
    let mut budget = Budget::new(req.limits.node_budget);
    let cap = req.limits.solution_cap;
    let mut count = 0u64;
    let mut cap_hit = false;
    let stop = search.run(&mut budget, &mut |colors| {
        if cap.is_some_and(|c| count >= c) {
            cap_hit = true;
            return ControlFlow::Break(());
        }
        count += 1;
        visitor(colors)
    });
    let end = match stop {
        Stop::Budget => EnumerationEnd::BudgetExhausted,
        Stop::Visitor if cap_hit => EnumerationEnd::CapReached,
        Stop::Visitor => EnumerationEnd::Stopped,
        Stop::Done => EnumerationEnd::Exhausted,
    };
    Ok(EnumerateOutcome {
        count,
        end,
        nodes: budget.used,
    })
}

/// Counts valid colorings.
pub fn count_colorings(req: &SolveRequest<'_>) -> Result<EnumerateOutcome, SolveError> {
    enumerate(req, |_| ControlFlow::Continue(()))
}

struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    #[inline]
    fn spend(&mut self) -> bool {
        self.used += 1;
        self.limit.map_or(true, |l| self.used <= l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    None,
    PinFirst,
    FirstUse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Done,
    Visitor,
    Budget,
}

struct Search<'g> {
    g: &'g Graph,
    kind: ColoringKind,
    k: Color,
    n: usize,
    order: Vec<EdgeId>,
    sym: Symmetry,
    colors: Vec<Color>,
    /// `cover[c * n + x]`: class-`c` edge id + 1 covering `x`, or 0.
    cover: Vec<usize>,
    /// `nbr[c * n + x]`: number of neighbors of `x` covered by class `c`.
    nbr: Vec<u32>,
    /// Scratch for the alternating-cycle search.
    on_path: Vec<bool>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, kind: ColoringKind, k: Color, sym: Symmetry) -> Self {
        let n = g.vertex_count();
        let slots = (k as usize + 1) * n;
        Search {
            g,
            kind,
            k,
            n,
            order: g.bfs_edge_order(),
            sym,
            colors: vec![0; g.edge_count()],
            cover: vec![0; slots],
            nbr: vec![0; slots],
            on_path: vec![false; n],
        }
    }

    fn run(&mut self, budget: &mut Budget, visit: &mut dyn FnMut(&[Color]) -> ControlFlow<()>) -> Stop {
        self.descend(0, 0, budget, visit)
    }

    fn descend(
        &mut self,
        depth: usize,
        max_used: Color,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[Color]) -> ControlFlow<()>,
    ) -> Stop {
        if depth == self.order.len() {
            let phi = EdgeColoring::new(self.colors.clone(), self.k).expect("complete coloring");
            let check = verify_coloring(self.g, &phi, self.kind).expect("consistent sizes");
            assert!(check.ok(), "search produced an invalid coloring: {:?}", check.violation);
            return match visit(&self.colors) {
                ControlFlow::Continue(()) => Stop::Done,
                ControlFlow::Break(()) => Stop::Visitor,
            };
        }
        let e = self.order[depth];
        let top = match self.sym {
            Symmetry::None => self.k,
            Symmetry::PinFirst if e == 0 => 1,
            Symmetry::PinFirst => self.k,
            Symmetry::FirstUse => self.k.min(max_used + 1),
        };
        for c in 1..=top {
            if !budget.spend() {
                return Stop::Budget;
            }
            if !self.try_assign(e, c) {
                continue;
            }
            let stop = self.descend(depth + 1, max_used.max(c), budget, visit);
            self.unassign(e, c);
            if stop != Stop::Done {
                return stop;
            }
        }
        Stop::Done
    }

    #[inline]
    fn slot(&self, c: Color, x: Vertex) -> usize {
        c as usize * self.n + x
    }

    fn try_assign(&mut self, e: EdgeId, c: Color) -> bool {
        let (a, b) = self.g.edge(e);
        let (sa, sb) = (self.slot(c, a), self.slot(c, b));
        if self.cover[sa] != 0 || self.cover[sb] != 0 {
            return false;
        }
        match self.kind {
            ColoringKind::Strong if self.nbr[sa] != 0 || self.nbr[sb] != 0 => return false,
            // after insertion a pendant endpoint sees only its partner
            ColoringKind::Semistrong if self.nbr[sa] != 0 && self.nbr[sb] != 0 => return false,
            _ => {}
        }
        self.apply(e, c);
        let ok = match self.kind {
            ColoringKind::Proper | ColoringKind::Strong => true,
            ColoringKind::Semistrong => self.neighbors_keep_one_vertex(a, b, c),
            ColoringKind::UniquelyRestricted => !self.alternating_cycle_through(e, c),
        };
        if !ok {
            self.unassign(e, c);
        }
        ok
    }

    fn apply(&mut self, e: EdgeId, c: Color) {
        let (a, b) = self.g.edge(e);
        let base = c as usize * self.n;
        self.colors[e] = c;
        self.cover[base + a] = e + 1;
        self.cover[base + b] = e + 1;
        for x in [a, b] {
            for &(y, _) in self.g.incident(x) {
                self.nbr[base + y] += 1;
            }
        }
    }

    fn unassign(&mut self, e: EdgeId, c: Color) {
        let (a, b) = self.g.edge(e);
        let base = c as usize * self.n;
        self.colors[e] = 0;
        self.cover[base + a] = 0;
        self.cover[base + b] = 0;
        for x in [a, b] {
            for &(y, _) in self.g.incident(x) {
                self.nbr[base + y] -= 1;
            }
        }
    }

    /// After inserting `ab` into class `c`, every class edge touching a
    /// neighbor of `a` or `b` must still have a pendant endpoint.
    fn neighbors_keep_one_vertex(&self, a: Vertex, b: Vertex, c: Color) -> bool {
        let base = c as usize * self.n;
        for x in [a, b] {
            for &(y, _) in self.g.incident(x) {
                let f = self.cover[base + y];
                if f == 0 || y == a || y == b {
                    continue;
                }
                let (p, q) = self.g.edge(f - 1);
                if self.nbr[base + p] != 1 && self.nbr[base + q] != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Any alternating cycle created by inserting `e` must pass through `e`.
    fn alternating_cycle_through(&mut self, e: EdgeId, c: Color) -> bool {
        let (a, b) = self.g.edge(e);
        self.on_path[a] = true;
        self.on_path[b] = true;
        let found = self.extend(a, b, c);
        self.on_path[a] = false;
        self.on_path[b] = false;
        found
    }

    fn extend(&mut self, start: Vertex, cur: Vertex, c: Color) -> bool {
        let base = c as usize * self.n;
        let g = self.g;
        let cur_edge = self.cover[base + cur] - 1;
        for &(y, f) in g.incident(cur) {
            if f == cur_edge || self.cover[base + y] == 0 {
                continue;
            }
            if y == start {
                return true;
            }
            if self.on_path[y] {
                continue;
            }
            let z = g.opposite(self.cover[base + y] - 1, y);
            if self.on_path[z] {
                continue;
            }
            self.on_path[y] = true;
            self.on_path[z] = true;
            let found = self.extend(start, z, c);
            self.on_path[y] = false;
            self.on_path[z] = false;
            if found {
                return true;
            }
        }
        false
    }
}
