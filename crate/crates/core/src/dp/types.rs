use std::fmt;

use serde::Serialize;

use crate::coloring::{verify_coloring, Color, ColoringKind, EdgeColoring};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::tree::RootedTree;

use super::DpError;

/// Color-type counts of a coloring relative to a subtree root.
///
/// * `p`: colors on a root edge whose child end is a 1-vertex;
/// * `q`: colors on a root edge whose child end is not a 1-vertex;
/// * `s`: colors absent from root edges, present on grandchild edges, and
///   every such edge has its far end as a 1-vertex;
/// * `t`: as `s`, but some grandchild edge relies on its near end.
///
/// The remaining `budget - p - q - s - t` colors are free (absent from both
/// generations).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Quad {
    pub p: u32,
    pub q: u32,
    pub s: u32,
    pub t: u32,
}

impl Quad {
    pub const fn new(p: u32, q: u32, s: u32, t: u32) -> Self {
        Quad { p, q, s, t }
    }

    #[inline]
    pub fn total(&self) -> u32 {
        self.p + self.q + self.s + self.t
    }

    /// Number of free colors under `budget`, if the quadruple fits.
    pub fn free(&self, budget: u32) -> Option<u32> {
        budget.checked_sub(self.total())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.p, self.q, self.s, self.t)
    }
}

/// Which subtree a feasible set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Owner {
    /// `v` and all its descendants.
    Subtree { vertex: Vertex },
    /// The subtree of the `child`-th child (0-based) plus its parent edge.
    Extended { vertex: Vertex, child: usize },
    /// `v` with its first `children` child branches.
    Prefix { vertex: Vertex, children: usize },
}

/// The set of quadruples realizable by some semistrong coloring of one
/// subtree. All entries share `p + q`, so storage is a dense bitset over
/// `(p, s, t)` with `p <= first_gen` and `s, t <= budget`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSet {
    owner: Owner,
    budget: u32,
    first_gen: u32,
    bits: Bits,
    len: usize,
}

const INLINE_WORDS: usize = 4;

/// Bitset storage. Leaf and single-branch sets fit inline for budgets up
/// to 10, which covers most sets of a tree and avoids one heap allocation
/// each.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Bits {
    Inline([u64; INLINE_WORDS]),
    Heap(Box<[u64]>),
}

impl Bits {
    fn zeroed(words: usize) -> Self {
        if words <= INLINE_WORDS {
            Bits::Inline([0; INLINE_WORDS])
        } else {
            Bits::Heap(vec![0; words].into_boxed_slice())
        }
    }

    #[inline]
    fn words(&self) -> &[u64] {
        match self {
            Bits::Inline(w) => w,
            Bits::Heap(w) => w,
        }
    }

    #[inline]
    fn words_mut(&mut self) -> &mut [u64] {
        match self {
            Bits::Inline(w) => w,
            Bits::Heap(w) => w,
        }
    }
}

impl FeasibleSet {
    pub fn new(owner: Owner, budget: u32, first_gen: u32) -> Self {
        let side = budget as usize + 1;
        let slots = (first_gen as usize + 1) * side * side;
        FeasibleSet {
            owner,
            budget,
            first_gen,
            bits: Bits::zeroed(slots.div_ceil(64)),
            len: 0,
        }
    }

    /// `{(0,0;0,0)}`, the set of a single vertex.
    pub fn leaf(vertex: Vertex, budget: u32) -> Self {
        let mut set = FeasibleSet::new(Owner::Subtree { vertex }, budget, 0);
        set.insert(Quad::new(0, 0, 0, 0));
        set
    }

    #[inline]
    pub fn owner(&self) -> Owner {
        self.owner
    }

    #[inline]
    pub fn budget(&self) -> u32 {
        self.budget
    }

    /// The common value of `p + q`.
    #[inline]
    pub fn first_gen(&self) -> u32 {
        self.first_gen
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn slot(&self, p: u32, s: u32, t: u32) -> usize {
        let side = self.budget as usize + 1;
        (p as usize * side + s as usize) * side + t as usize
    }

    fn admits(&self, x: &Quad) -> bool {
        x.p + x.q == self.first_gen && x.total() <= self.budget
    }

    pub fn contains(&self, x: &Quad) -> bool {
        if !self.admits(x) {
            return false;
        }
        let i = self.slot(x.p, x.s, x.t);
        self.bits.words()[i / 64] >> (i % 64) & 1 == 1
    }

    /// Panics if `x` does not fit the set's shape.
    pub fn insert(&mut self, x: Quad) -> bool {
        assert!(self.admits(&x), "{x} does not fit a set with p+q={} budget={}", self.first_gen, self.budget);
        let i = self.slot(x.p, x.s, x.t);
        let (word, mask) = (i / 64, 1u64 << (i % 64));
        let words = self.bits.words_mut();
        let fresh = words[word] & mask == 0;
        words[word] |= mask;
        self.len += usize::from(fresh);
        fresh
    }

    /// Inserts `(p, first_gen - p; s, t)` for every `s` in `lo..=hi`.
    pub(crate) fn insert_s_range(&mut self, p: u32, t: u32, lo: u32, hi: u32) {
        let q = self.first_gen - p;
        for s in lo..=hi {
            self.insert(Quad::new(p, q, s, t));
        }
    }

    /// Entries in lexicographic order of `(p, q, s, t)`.
    pub fn iter(&self) -> impl Iterator<Item = Quad> + '_ {
        let side = self.budget as usize + 1;
        let first_gen = self.first_gen;
        self.bits.words().iter().enumerate().flat_map(move |(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let i = w * 64 + bit;
                let (p, s, t) = (i / (side * side), i / side % side, i % side);
                Some(Quad::new(p as u32, first_gen - p as u32, s as u32, t as u32))
            })
        })
    }

    /// Entries with the given first-generation split.
    pub fn restrict(&self, p: u32, q: u32) -> impl Iterator<Item = Quad> + '_ {
        self.iter().filter(move |x| x.p == p && x.q == q)
    }

    pub fn to_vec(&self) -> Vec<Quad> {
        self.iter().collect()
    }
}

/// Colors of the palette `1..=budget` split by type; every list is sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ColorTypePartition {
    pub p: Vec<Color>,
    pub q: Vec<Color>,
    pub s: Vec<Color>,
    pub t: Vec<Color>,
    pub a: Vec<Color>,
}

impl ColorTypePartition {
    pub fn quad(&self) -> Quad {
        Quad::new(self.p.len() as u32, self.q.len() as u32, self.s.len() as u32, self.t.len() as u32)
    }

    /// Assigns the lowest colors to `p`, then `q`, `s`, `t`; the rest are free.
    pub fn canonical(x: Quad, budget: u32) -> Self {
        let mut next = 1..=budget;
        let mut take = |k: u32| next.by_ref().take(k as usize).collect::<Vec<_>>();
        let p = take(x.p);
        let q = take(x.q);
        let s = take(x.s);
        let t = take(x.t);
        ColorTypePartition { p, q, s, t, a: next.collect() }
    }

    /// True when the five lists partition `1..=budget`.
    pub fn is_partition_of(&self, budget: u32) -> bool {
        let mut seen = vec![false; budget as usize + 1];
        for &c in self.p.iter().chain(&self.q).chain(&self.s).chain(&self.t).chain(&self.a) {
            if c == 0 || c > budget || std::mem::replace(&mut seen[c as usize], true) {
                return false;
            }
        }
        seen.iter().skip(1).all(|&b| b)
    }

    pub(crate) fn normalize(&mut self) {
        for list in [&mut self.p, &mut self.q, &mut self.s, &mut self.t, &mut self.a] {
            list.sort_unstable();
        }
    }
}

/// Is `near` (an endpoint of `e`) pendant in the subgraph induced by the
/// endpoints of `e`'s color class? Only valid when the class is a matching.
pub(crate) fn is_one_vertex(g: &Graph, phi: &EdgeColoring, e: EdgeId, x: Vertex) -> bool {
    let color = phi.color(e);
    let other = g.opposite(e, x);
    g.incident(x)
        .iter()
        .filter(|&&(y, _)| y != other)
        .all(|&(y, _)| g.incident(y).iter().all(|&(_, f)| phi.color(f) != color))
}

/// Types of all `budget` colors relative to the root of `tree` under the
/// semistrong coloring `phi`.
pub fn classify_colors(tree: &RootedTree, phi: &EdgeColoring, budget: u32) -> Result<ColorTypePartition, DpError> {
    let g = tree.graph();
    let check = verify_coloring(g, phi, ColoringKind::Semistrong)?;
    if let Some(violation) = check.violation {
        return Err(DpError::NotSemistrong(violation));
    }
    if let Some((edge, &color)) = phi.colors().iter().enumerate().find(|&(_, &c)| c > budget) {
        return Err(DpError::ColorOverBudget { edge, color, budget });
    }
    // 0 = free, 1 = p, 2 = q, 3 = s, 4 = t
    let mut kind = vec![0u8; budget as usize + 1];
    let root = tree.root();
    for &(w, e) in tree.children(root) {
        kind[phi.color(e) as usize] = if is_one_vertex(g, phi, e, w) { 1 } else { 2 };
    }
    for &(w, _) in tree.children(root) {
        for &(y, e) in tree.children(w) {
            let c = phi.color(e) as usize;
            match kind[c] {
                0 | 3 => kind[c] = if is_one_vertex(g, phi, e, y) { 3 } else { 4 },
                _ => {}
            }
        }
    }
    let mut out = ColorTypePartition::default();
    for c in 1..=budget {
        let list = match kind[c as usize] {
            1 => &mut out.p,
            2 => &mut out.q,
            3 => &mut out.s,
            4 => &mut out.t,
            _ => &mut out.a,
        };
        list.push(c);
    }
    Ok(out)
}
