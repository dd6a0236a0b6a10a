//! The two transitions of the dynamic program.
//!
//! Vertical expansion adds the edge from `v` to a child on top of the
//! child's subtree. Horizontal merging glues a prefix of `v`'s branches
//! (left) to the next branch (right). The merge test is a closed-form
//! system of three inequalities; when it holds, explicit transfer counts
//! say how the right branch's colors must be relabeled onto the left's.

use serde::Serialize;

use super::types::{FeasibleSet, Owner, Quad};

/// How the new branch edge `v v_{i+1}` relates to the left prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergeCase {
    /// `v` is the edge's only 1-vertex; its color is free on the left.
    FreeQ,
    /// The child end is a 1-vertex; the color is free on the left.
    FreeP,
    /// The child end is a 1-vertex; the color is one of the left's `s`
    /// colors (grandchild edges that keep their far ends pendant).
    SharedP,
}

impl MergeCase {
    pub const ALL: [MergeCase; 3] = [MergeCase::FreeQ, MergeCase::FreeP, MergeCase::SharedP];

    /// 1, 2 or 3.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// Right-branch first-generation split this case consumes.
    pub fn right_split(self) -> (u32, u32) {
        match self {
            MergeCase::FreeQ => (0, 1),
            MergeCase::FreeP | MergeCase::SharedP => (1, 0),
        }
    }

    /// Left prefix first-generation split for a merged `(p, q)`.
    pub fn left_split(self, p: u32, q: u32) -> Option<(u32, u32)> {
        match self {
            MergeCase::FreeQ => Some((p, q.checked_sub(1)?)),
            MergeCase::FreeP | MergeCase::SharedP => Some((p.checked_sub(1)?, q)),
        }
    }
}

/// Arguments shared by the merge test, the transfer formulas and the
/// system check. `p`, `s`, `t` describe the merged coloring; `*_l` the left
/// prefix; `*_r` the right branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MergeArgs {
    pub case: MergeCase,
    pub p: u32,
    pub s: u32,
    pub t: u32,
    pub s_l: u32,
    pub t_l: u32,
    pub s_r: u32,
    pub t_r: u32,
}

impl MergeArgs {
    /// `(p', s_l')`: `p` and `s_l` after removing what the new edge's color
    /// takes from the left. `None` when the case is impossible.
    fn shifted(&self) -> Option<(i64, i64)> {
        let (p, s_l) = (self.p as i64, self.s_l as i64);
        let (p, s_l) = match self.case {
            MergeCase::FreeQ => (p, s_l),
            MergeCase::FreeP => (p - 1, s_l),
            MergeCase::SharedP => (p - 1, s_l - 1),
        };
        (p >= 0 && s_l >= 0).then_some((p, s_l))
    }
}

/// Counts of right-branch colors landing in each left type. `x_*` are the
/// right's `s` colors, `y_*` the right's `t` colors; the suffix names the
/// left type they are identified with (`a` = free on the left).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Transfer {
    pub x_p: u32,
    pub x_s: u32,
    pub x_t: u32,
    pub x_a: u32,
    pub y_s: u32,
    pub y_t: u32,
    pub y_a: u32,
}

/// The three-inequality merge test.
pub fn merge_conditions(args: &MergeArgs) -> bool {
    let Some((p, s_l)) = args.shifted() else {
        return false;
    };
    let (s, t, t_l, s_r, t_r) = (args.s as i64, args.t as i64, args.t_l as i64, args.s_r as i64, args.t_r as i64);
    let first = t_r <= t && t <= t_l + t_r;
    let second = 0.max(s_l - s) <= s_l.min(t - t_l);
    let third = 0 <= s_l + s_r - s && s_l + s_r - s <= s_l + p + t - t_r;
    first && second && third
}

/// Closed-form transfer counts; `None` when the merge test fails.
pub fn witness_assignment(args: &MergeArgs) -> Option<Transfer> {
    if !merge_conditions(args) {
        return None;
    }
    let (p, s_l) = args.shifted()?;
    let (s, t, t_l, s_r, t_r) = (args.s as i64, args.t as i64, args.t_l as i64, args.s_r as i64, args.t_r as i64);
    let y_t = t_l + t_r - t;
    let y_s = s_l.min(t - t_l).min(s_l + s_r - s);
    let x_a = s - s_l + y_s;
    let y_a = t - t_l - y_s;
    let x_t = (t - t_r).min(s_l + s_r - s - y_s);
    let x_p = p.min(s_r - x_a - x_t);
    let x_s = s_r - x_a - x_t - x_p;
    let all = [x_p, x_s, x_t, x_a, y_s, y_t, y_a];
    assert!(all.iter().all(|&x| x >= 0), "negative transfer {all:?} for {args:?}");
    let w = Transfer {
        x_p: x_p as u32,
        x_s: x_s as u32,
        x_t: x_t as u32,
        x_a: x_a as u32,
        y_s: y_s as u32,
        y_t: y_t as u32,
        y_a: y_a as u32,
    };
    #[cfg(debug_assertions)]
    if let Err(line) = check_system(args, &w, None) {
        panic!("transfer {w:?} violates line {line} for {args:?}");
    }
    Some(w)
}

/// Checks the full eight-line system for `args`. Line 8 needs the left's
/// free-color count, `budget + 1 - p - q - s_l - t_l`; pass `None` to skip
/// it. On failure returns the first violated line (1-based).
pub fn check_system(args: &MergeArgs, w: &Transfer, free_left: Option<(u32, u32)>) -> Result<(), u8> {
    let i = |x: u32| x as i64;
    let shared = args.case == MergeCase::SharedP;
    let p_cap = match args.case {
        MergeCase::FreeQ => i(args.p),
        _ => i(args.p) - 1,
    };
    let used_s = i64::from(shared);
    let lines = [
        i(args.s_r) == i(w.x_p) + i(w.x_s) + i(w.x_t) + i(w.x_a),
        i(args.t_r) == i(w.y_s) + i(w.y_t) + i(w.y_a),
        i(args.s) == i(args.s_l) - used_s - i(w.y_s) + i(w.x_a),
        i(args.t) == i(args.t_r) + i(args.t_l) - i(w.y_t),
        i(w.x_p) <= p_cap,
        used_s + i(w.x_s) + i(w.y_s) <= i(args.s_l),
        i(w.x_t) + i(w.y_t) <= i(args.t_l),
    ];
    if let Some(bad) = lines.iter().position(|ok| !ok) {
        return Err(bad as u8 + 1);
    }
    if let Some((budget, q)) = free_left {
        let a_l = i(budget) + 1 - i(args.p) - i(q) - i(args.s_l) - i(args.t_l);
        let needed = i64::from(!shared) + i(w.x_a) + i(w.y_a);
        if needed > a_l {
            return Err(8);
        }
    }
    Ok(())
}

/// The set of the child's subtree extended by its parent edge.
///
/// The child's first-generation counts become the extended set's
/// second-generation counts. The new edge either takes a free color of the
/// child (child end is a 1-vertex) or one of the child's `s` colors (only
/// the parent end is a 1-vertex).
pub fn vertical_expand(child: &FeasibleSet, owner: Owner) -> FeasibleSet {
    let budget = child.budget();
    let mut out = FeasibleSet::new(owner, budget, 1);
    for x in child.iter() {
        if x.total() < budget {
            out.insert(Quad::new(1, 0, x.p, x.q));
        }
        if x.total() <= budget && x.s >= 1 {
            out.insert(Quad::new(0, 1, x.p, x.q));
        }
    }
    out
}

/// Merges a prefix with `branches` branches (left) and the next extended
/// branch (right).
///
/// Iterates over pairs of present entries; for each pair and case, `t`
/// ranges over an interval and the admissible `s` form an interval too, so
/// the work is proportional to the sizes of the two inputs rather than the
/// full candidate space.
pub fn horizontal_merge(left: &FeasibleSet, right: &FeasibleSet, owner: Owner) -> FeasibleSet {
    let budget = left.budget();
    debug_assert_eq!(right.budget(), budget);
    debug_assert_eq!(right.first_gen(), 1);
    let first_gen = left.first_gen() + 1;
    let mut out = FeasibleSet::new(owner, budget, first_gen);
    let Some(room) = budget.checked_sub(first_gen) else {
        return out;
    };
    let rights = right.to_vec();
    for l in left.iter() {
        for r in &rights {
            for case in MergeCase::ALL {
                if case.right_split() != (r.p, r.q) {
                    continue;
                }
                let (p_new, s_l) = match case {
                    MergeCase::FreeQ => (l.p, l.s),
                    MergeCase::FreeP => (l.p + 1, l.s),
                    MergeCase::SharedP if l.s >= 1 => (l.p + 1, l.s - 1),
                    MergeCase::SharedP => continue,
                };
                // in every case the shifted p equals the left's p
                let (p, s_l, t_l, s_r, t_r) = (l.p as i64, s_l as i64, l.t as i64, r.s as i64, r.t as i64);
                for t in t_l.max(t_r)..=(t_l + t_r).min(room as i64) {
                    let lo = 0.max(s_l - (t - t_l)).max(s_r - p - (t - t_r));
                    let hi = (s_l + s_r).min(room as i64 - t);
                    if lo <= hi {
                        out.insert_s_range(p_new, t as u32, lo as u32, hi as u32);
                    }
                }
            }
        }
    }
    out
}

/// Literal form of the merge: every candidate `(p, q, s, t)` checked
/// against every left/right pair. Kept as a cross-check for
/// [`horizontal_merge`].
pub fn horizontal_merge_literal(left: &FeasibleSet, right: &FeasibleSet, owner: Owner) -> FeasibleSet {
    let budget = left.budget();
    let first_gen = left.first_gen() + 1;
    let mut out = FeasibleSet::new(owner, budget, first_gen);
    let Some(room) = budget.checked_sub(first_gen) else {
        return out;
    };
    for p in 0..=first_gen {
        let q = first_gen - p;
        for s in 0..=room {
            for t in 0..=room - s {
                if find_merge(left, right, Quad::new(p, q, s, t)).is_some() {
                    out.insert(Quad::new(p, q, s, t));
                }
            }
        }
    }
    out
}

/// The lexicographically first `(case, s_l, t_l, t_r)` realizing `x` from
/// `left` and `right`.
pub fn find_merge(left: &FeasibleSet, right: &FeasibleSet, x: Quad) -> Option<(MergeArgs, Transfer)> {
    let budget = left.budget();
    for case in MergeCase::ALL {
        let Some((p_l, q_l)) = case.left_split(x.p, x.q) else {
            continue;
        };
        let (p_r, q_r) = case.right_split();
        for s_l in 0..=budget {
            for t_l in 0..=budget {
                if !left.contains(&Quad::new(p_l, q_l, s_l, t_l)) {
                    continue;
                }
                for r in right.restrict(p_r, q_r) {
                    let args = MergeArgs {
                        case,
                        p: x.p,
                        s: x.s,
                        t: x.t,
                        s_l,
                        t_l,
                        s_r: r.s,
                        t_r: r.t,
                    };
                    if let Some(w) = witness_assignment(&args) {
                        return Some((args, w));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[allow(clippy::too_many_arguments)]
    fn args(case: MergeCase, p: u32, s: u32, t: u32, s_l: u32, t_l: u32, s_r: u32, t_r: u32) -> MergeArgs {
        MergeArgs { case, p, s, t, s_l, t_l, s_r, t_r }
    }

    const OWNER: Owner = Owner::Subtree { vertex: 0 };

    fn set(budget: u32, first_gen: u32, items: &[Quad]) -> FeasibleSet {
        let mut out = FeasibleSet::new(OWNER, budget, first_gen);
        for &x in items {
            out.insert(x);
        }
        out
    }

    #[test]
    fn vertical_examples() {
        let leaf = FeasibleSet::leaf(0, 3);
        assert_eq!(vertical_expand(&leaf, OWNER).to_vec(), vec![Quad::new(1, 0, 0, 0)]);
        let edge = set(2, 1, &[Quad::new(1, 0, 0, 0)]);
        assert_eq!(vertical_expand(&edge, OWNER).to_vec(), vec![Quad::new(1, 0, 1, 0)]);
        let edge = set(1, 1, &[Quad::new(1, 0, 0, 0)]);
        assert!(vertical_expand(&edge, OWNER).is_empty());
        // an s color lets the parent edge hang on the parent end
        let rich = set(3, 1, &[Quad::new(0, 1, 1, 0)]);
        assert_eq!(vertical_expand(&rich, OWNER).to_vec(), vec![Quad::new(0, 1, 0, 1), Quad::new(1, 0, 0, 1)]);
    }

    #[test]
    fn merge_condition_examples() {
        assert!(merge_conditions(&args(MergeCase::FreeP, 2, 0, 0, 0, 0, 0, 0)));
        for s in 0..3 {
            assert!(!merge_conditions(&args(MergeCase::FreeQ, 1, s, 1, 1, 0, 1, 0)));
        }
        assert!(merge_conditions(&args(MergeCase::FreeQ, 1, 1, 1, 1, 0, 1, 1)));
        // guards
        assert!(!merge_conditions(&args(MergeCase::FreeP, 0, 0, 0, 0, 0, 0, 0)));
        assert!(!merge_conditions(&args(MergeCase::SharedP, 1, 0, 0, 0, 0, 0, 0)));
    }

    #[test]
    fn witness_examples() {
        let w = witness_assignment(&args(MergeCase::FreeQ, 1, 1, 1, 1, 0, 1, 1)).unwrap();
        assert_eq!(
            [w.x_p, w.x_s, w.x_t, w.x_a, w.y_s, w.y_t, w.y_a],
            [0, 0, 0, 1, 1, 0, 0]
        );
        let w = witness_assignment(&args(MergeCase::FreeP, 2, 0, 0, 0, 0, 0, 0)).unwrap();
        assert_eq!(w, Transfer::default());
        assert!(witness_assignment(&args(MergeCase::FreeQ, 1, 0, 1, 0, 0, 0, 0)).is_none());
    }

    /// Exhaustive search for a system solution; independent of the closed
    /// forms.
    fn system_solvable(a: &MergeArgs) -> bool {
        let b = 5;
        for x_p in 0..=b {
            for x_s in 0..=b {
                for x_t in 0..=b {
                    for x_a in 0..=b {
                        for y_s in 0..=b {
                            for y_t in 0..=b {
                                for y_a in 0..=b {
                                    let w = Transfer { x_p, x_s, x_t, x_a, y_s, y_t, y_a };
                                    if check_system(a, &w, None).is_ok() {
                                        return true;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn conditions_characterize_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let mut v = || rng.gen_range(0..4u32);
            let a = args(MergeCase::ALL[(v() % 3) as usize], v(), v(), v(), v(), v(), v(), v());
            let expect = system_solvable(&a);
            assert_eq!(merge_conditions(&a), expect, "{a:?}");
            if let Some(w) = witness_assignment(&a) {
                assert_eq!(check_system(&a, &w, None), Ok(()));
            }
        }
    }

    #[test]
    fn line_eight_follows_from_budget() {
        for case in MergeCase::ALL {
            for p in 0..4 {
                for q in 0..3 {
                    for s in 0..3 {
                        for t in 0..3 {
                            for s_l in 0..3 {
                                for t_l in 0..3 {
                                    for s_r in 0..3 {
                                        for t_r in 0..3 {
                                            let a = args(case, p, s, t, s_l, t_l, s_r, t_r);
                                            let budget = p + q + s + t;
                                            if case.left_split(p, q).is_none() {
                                                continue;
                                            }
                                            if let Some(w) = witness_assignment(&a) {
                                                assert_eq!(check_system(&a, &w, Some((budget, q))), Ok(()), "{a:?}");
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn merge_examples() {
        let one = set(3, 1, &[Quad::new(1, 0, 0, 0)]);
        let merged = horizontal_merge(&one, &one, OWNER);
        assert_eq!(merged.to_vec(), vec![Quad::new(2, 0, 0, 0)]);
        let one = set(1, 1, &[Quad::new(1, 0, 0, 0)]);
        assert!(horizontal_merge(&one, &one, OWNER).is_empty());
        for x in horizontal_merge(&set(5, 1, &[Quad::new(1, 0, 1, 0), Quad::new(0, 1, 1, 1)]), &set(5, 1, &[Quad::new(0, 1, 2, 0)]), OWNER).iter() {
            assert_eq!(x.p + x.q, 2);
        }
    }

    #[test]
    fn fast_merge_matches_literal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let budget = rng.gen_range(1..6u32);
            let branches = rng.gen_range(1..=budget);
            let chd = rng.gen_range(0..=budget);
            let mut left = FeasibleSet::new(OWNER, budget, branches);
            let mut right = FeasibleSet::new(OWNER, budget, 1);
            for _ in 0..rng.gen_range(1..8) {
                let p = rng.gen_range(0..=branches);
                let s = rng.gen_range(0..=budget);
                let t = rng.gen_range(0..=budget);
                let x = Quad::new(p, branches - p, s, t);
                if x.total() <= budget {
                    left.insert(x);
                }
                let t_r = rng.gen_range(0..=chd);
                let p_r = rng.gen_range(0..2);
                let y = Quad::new(p_r, 1 - p_r, chd - t_r, t_r);
                if y.total() <= budget {
                    right.insert(y);
                }
            }
            assert_eq!(
                horizontal_merge(&left, &right, OWNER).to_vec(),
                horizontal_merge_literal(&left, &right, OWNER).to_vec(),
                "left {:?} right {:?}",
                left.to_vec(),
                right.to_vec()
            );
        }
    }
}
