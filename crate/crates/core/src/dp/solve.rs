use serde::Serialize;

use crate::coloring::{verify_coloring, Color, ColoringKind, EdgeColoring};
use crate::graph::{Graph, Vertex};
use crate::tree::RootedTree;

use super::transitions::{check_system, find_merge, horizontal_merge, vertical_expand, MergeArgs, MergeCase, Transfer};
use super::types::{classify_colors, ColorTypePartition, FeasibleSet, Owner, Quad};
use super::DpError;

/// Sets computed at one vertex.
#[derive(Debug, Clone)]
struct VertexSets {
    /// One per child: the child's subtree plus its parent edge.
    extended: Vec<FeasibleSet>,
    /// Prefixes with 2, 3, ... branches; the last one is the full subtree.
    prefixes: Vec<FeasibleSet>,
    /// Set of a leaf.
    leaf: Option<FeasibleSet>,
}

impl VertexSets {
    fn full(&self) -> &FeasibleSet {
        self.leaf
            .as_ref()
            .or(self.prefixes.last())
            .or(self.extended.first())
            .expect("computed vertex has a set")
    }

    /// Prefix made of the first `branches` branches.
    fn prefix(&self, branches: usize) -> &FeasibleSet {
        if branches == 1 {
            &self.extended[0]
        } else {
            &self.prefixes[branches - 2]
        }
    }
}

/// Outcome of the dynamic program for one budget.
#[derive(Debug, Clone)]
pub struct DpSolution {
    budget: u32,
    root: Vertex,
    sets: Vec<Option<VertexSets>>,
    /// Set whose emptiness stopped the run.
    failed_at: Option<Owner>,
}

impl DpSolution {
    pub fn budget(&self) -> u32 {
        self.budget
    }

    pub fn feasible(&self) -> bool {
        self.failed_at.is_none()
    }

    /// The first empty set met, if the run stopped early.
    pub fn failed_at(&self) -> Option<Owner> {
        self.failed_at
    }

    /// The root's set; `None` when infeasible.
    pub fn root_set(&self) -> Option<&FeasibleSet> {
        if !self.feasible() {
            return None;
        }
        self.sets[self.root].as_ref().map(VertexSets::full)
    }

    /// Set of a computed subtree, for inspection.
    pub fn subtree_set(&self, v: Vertex) -> Option<&FeasibleSet> {
        self.sets.get(v)?.as_ref().map(VertexSets::full)
    }

    /// First root entry in lexicographic order.
    pub fn first_root_tuple(&self) -> Option<Quad> {
        self.root_set()?.iter().next()
    }
}

/// Runs the dynamic program bottom-up with color budget `budget`, stopping
/// at the first empty set.
pub fn solve_tree(tree: &RootedTree, budget: u32) -> Result<DpSolution, DpError> {
    let g = tree.graph();
    let max_degree = g.max_degree() as u32;
    if budget < max_degree {
        return Err(DpError::BudgetBelowDegree { budget, max_degree });
    }
    let n = tree.vertex_count();
    let mut sets: Vec<Option<VertexSets>> = vec![None; n];
    for v in postorder(tree) {
        let kids = tree.children(v);
        if kids.is_empty() {
            sets[v] = Some(VertexSets {
                extended: Vec::new(),
                prefixes: Vec::new(),
                leaf: Some(FeasibleSet::leaf(v, budget)),
            });
            continue;
        }
        let mut here = VertexSets {
            extended: Vec::with_capacity(kids.len()),
            prefixes: Vec::with_capacity(kids.len().saturating_sub(1)),
            leaf: None,
        };
        for (i, &(w, _)) in kids.iter().enumerate() {
            let child = sets[w].as_ref().expect("children finish first").full();
            let owner = Owner::Extended { vertex: v, child: i };
            let ext = vertical_expand(child, owner);
            if ext.is_empty() {
                return Ok(stopped(budget, tree.root(), sets, owner));
            }
            here.extended.push(ext);
        }
        for i in 1..kids.len() {
            let owner = Owner::Prefix {
                vertex: v,
                children: i + 1,
            };
            let merged = horizontal_merge(here.prefix(i), &here.extended[i], owner);
            if merged.is_empty() {
                return Ok(stopped(budget, tree.root(), sets, owner));
            }
            here.prefixes.push(merged);
        }
        sets[v] = Some(here);
    }
    Ok(DpSolution {
        budget,
        root: tree.root(),
        sets,
        failed_at: None,
    })
}

/// Children before parents, each subtree contiguous, so a child's set is
/// still warm in cache when its parent reads it.
fn postorder(tree: &RootedTree) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(tree.vertex_count());
    let mut stack = vec![(tree.root(), 0usize)];
    while let Some((v, next)) = stack.last_mut() {
        let v = *v;
        match tree.children(v).get(*next) {
            Some(&(w, _)) => {
                *next += 1;
                stack.push((w, 0));
            }
            None => {
                order.push(v);
                stack.pop();
            }
        }
    }
    order
}

fn stopped(budget: u32, root: Vertex, sets: Vec<Option<VertexSets>>, at: Owner) -> DpSolution {
    DpSolution {
        budget,
        root,
        sets,
        failed_at: Some(at),
    }
}

/// Realizes `tuple` (an entry of the root set) as an explicit coloring.
///
/// Works top-down: the root gets the canonical partition of `tuple`, and
/// each merge or expansion splits its partition into concrete color sets
/// for the parts below, so each edge is colored exactly once. The result
/// is checked to be semistrong and to classify to exactly the root
/// partition; a mismatch is an internal error.
pub fn reconstruct_coloring(
    tree: &RootedTree,
    solution: &DpSolution,
    tuple: Quad,
) -> Result<(EdgeColoring, ColorTypePartition), DpError> {
    let budget = solution.budget;
    let root_set = solution.root_set().ok_or(DpError::Infeasible { budget })?;
    if !root_set.contains(&tuple) {
        return Err(DpError::NotInSet(tuple));
    }
    let g = tree.graph();
    let root_part = ColorTypePartition::canonical(tuple, budget);
    let mut colors: Vec<Color> = vec![0; g.edge_count()];
    let mut stack = vec![Task::Subtree {
        vertex: tree.root(),
        part: root_part.clone(),
    }];
    while let Some(task) = stack.pop() {
        match task {
            Task::Subtree { vertex, part } => {
                let sets = solution.sets[vertex].as_ref().expect("feasible run computes every vertex");
                let kids = tree.children(vertex).len();
                let mut part = part;
                for branches in (2..=kids).rev() {
                    let x = part.quad();
                    let left = sets.prefix(branches - 1);
                    let right = &sets.extended[branches - 1];
                    let (args, w) = find_merge(left, right, x).ok_or_else(|| internal(format!(
                        "no merge witness for {x} at vertex {vertex} with {branches} branches"
                    )))?;
                    let q_merged = x.q;
                    check_system(&args, &w, Some((budget, q_merged)))
                        .map_err(|line| internal(format!("witness {w:?} fails line {line} for {args:?}")))?;
                    let (l, r) = split_merge(&part, &args, &w);
                    stack.push(Task::Extended {
                        vertex,
                        child: branches - 1,
                        part: r,
                    });
                    part = l;
                }
                if kids >= 1 {
                    stack.push(Task::Extended { vertex, child: 0, part });
                }
            }
            Task::Extended { vertex, child, part } => {
                let (w, e) = tree.children(vertex)[child];
                let child_set = solution.sets[w].as_ref().expect("computed").full();
                let x = part.quad();
                let hangs_on_child = x.p == 1;
                let alpha = if hangs_on_child { part.p[0] } else { part.q[0] };
                colors[e] = alpha;
                let below = child_set
                    .restrict(x.s, x.t)
                    .find(|c| {
                        if hangs_on_child {
                            c.total() < budget
                        } else {
                            c.total() <= budget && c.s >= 1
                        }
                    })
                    .ok_or_else(|| internal(format!("no child tuple under {x} for vertex {w}")))?;
                stack.push(Task::Subtree {
                    vertex: w,
                    part: split_vertical(&part, below, alpha, hangs_on_child),
                });
            }
        }
    }
    let phi = EdgeColoring::new(colors, budget).map_err(|e| internal(format!("reconstruction left a gap: {e}")))?;
    let check = verify_coloring(g, &phi, ColoringKind::Semistrong)?;
    if let Some(v) = check.violation {
        return Err(internal(format!("reconstructed coloring is not semistrong: {v}")));
    }
    let got = classify_colors(tree, &phi, budget)?;
    if got != root_part {
        return Err(internal(format!("root types {got:?}, expected {root_part:?}")));
    }
    Ok((phi, root_part))
}

enum Task {
    Subtree { vertex: Vertex, part: ColorTypePartition },
    Extended { vertex: Vertex, child: usize, part: ColorTypePartition },
}

fn internal(msg: String) -> DpError {
    DpError::Internal(msg)
}

/// Splits `list` into its first `k` entries and the rest.
fn take(list: &mut Vec<Color>, k: u32) -> Vec<Color> {
    let rest = list.split_off(k as usize);
    std::mem::replace(list, rest)
}

/// Partition of the child subtree below an extended branch whose partition
/// is `part`. The child's root-edge colors are the branch's grandchild
/// colors; the child's own grandchild colors come from the branch's free
/// colors (plus the branch edge color when it hangs on the parent end).
fn split_vertical(part: &ColorTypePartition, below: Quad, alpha: Color, hangs_on_child: bool) -> ColorTypePartition {
    let mut free = part.a.clone();
    let mut s = Vec::with_capacity(below.s as usize);
    let mut a = Vec::new();
    if hangs_on_child {
        a.push(alpha);
    } else {
        s.push(alpha);
    }
    s.extend(take(&mut free, below.s - s.len() as u32));
    let t = take(&mut free, below.t);
    a.extend(free);
    let mut out = ColorTypePartition {
        p: part.s.clone(),
        q: part.t.clone(),
        s,
        t,
        a,
    };
    out.normalize();
    out
}

/// Partitions of the left prefix and the right branch whose merge yields
/// `part`, following the transfer counts `w`.
fn split_merge(part: &ColorTypePartition, args: &MergeArgs, w: &Transfer) -> (ColorTypePartition, ColorTypePartition) {
    let mut p = part.p.clone();
    let mut q = part.q.clone();
    let alpha = match args.case {
        MergeCase::FreeQ => q.pop(),
        MergeCase::FreeP | MergeCase::SharedP => p.pop(),
    }
    .expect("case matches the partition");

    // colors the merged coloring gained from the right branch
    let mut s_rest = part.s.clone();
    let x_a = take(&mut s_rest, w.x_a);
    let mut t_rest = part.t.clone();
    let y_s = take(&mut t_rest, w.y_s);
    let y_a = take(&mut t_rest, w.y_a);

    let mut left = ColorTypePartition {
        p,
        q,
        s: s_rest.iter().chain(&y_s).copied().collect(),
        t: t_rest.clone(),
        a: part.a.iter().chain(&x_a).chain(&y_a).copied().collect(),
    };
    match args.case {
        MergeCase::SharedP => left.s.push(alpha),
        _ => left.a.push(alpha),
    }

    // right's grandchild colors, placed on left types
    let mut t_l = t_rest;
    let y_t = take(&mut t_l, w.y_t);
    let x_t = take(&mut t_l, w.x_t);
    let x_s = s_rest[..w.x_s as usize].to_vec();
    let x_p = left.p[..w.x_p as usize].to_vec();
    let s_r: Vec<Color> = x_p.iter().chain(&x_s).chain(&x_t).chain(&x_a).copied().collect();
    let t_r: Vec<Color> = y_s.iter().chain(&y_t).chain(&y_a).copied().collect();
    let mut taken = vec![false; (part.p.len() + part.q.len() + part.s.len() + part.t.len() + part.a.len()) + 1];
    for &c in s_r.iter().chain(&t_r) {
        taken[c as usize] = true;
    }
    taken[alpha as usize] = true;
    let a_r = (1..taken.len() as Color).filter(|&c| !taken[c as usize]).collect();
    let (p_r, q_r) = match args.case {
        MergeCase::FreeQ => (vec![], vec![alpha]),
        _ => (vec![alpha], vec![]),
    };
    let mut right = ColorTypePartition {
        p: p_r,
        q: q_r,
        s: s_r,
        t: t_r,
        a: a_r,
    };
    left.normalize();
    right.normalize();
    (left, right)
}

/// Semistrong chromatic index of a tree with an optimal coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeIndex {
    /// Either the maximum degree or one more.
    pub index: u32,
    pub max_degree: u32,
    pub root_tuple: Option<Quad>,
    #[serde(skip)]
    pub coloring: EdgeColoring,
}

/// Runs the program with budget equal to the maximum degree and, if that
/// fails, with one more color (which always succeeds on trees).
pub fn semistrong_index_tree(g: &Graph) -> Result<TreeIndex, DpError> {
    semistrong_index_rooted(&RootedTree::new(g.clone(), 0)?)
}

pub fn semistrong_index_rooted(tree: &RootedTree) -> Result<TreeIndex, DpError> {
    let max_degree = tree.graph().max_degree() as u32;
    if tree.graph().edge_count() == 0 {
        return Ok(TreeIndex {
            index: 0,
            max_degree,
            root_tuple: None,
            coloring: EdgeColoring::new(Vec::new(), 0).expect("empty"),
        });
    }
    for budget in [max_degree, max_degree + 1] {
        let solution = solve_tree(tree, budget)?;
        if let Some(tuple) = solution.first_root_tuple() {
            let (coloring, _) = reconstruct_coloring(tree, &solution, tuple)?;
            return Ok(TreeIndex {
                index: budget,
                max_degree,
                root_tuple: Some(tuple),
                coloring,
            });
        }
    }
    Err(internal(format!("tree not colorable with {} colors", max_degree + 1)))
}
