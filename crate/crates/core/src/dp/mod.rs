//! Exact semistrong colorability of trees for a given color budget.
//!
//! Every subtree is summarized by the set of color-type quadruples its
//! semistrong colorings can realize. Sets are built bottom-up by expanding
//! each child subtree with its parent edge and merging the branches of a
//! vertex left to right. With budget equal to the maximum degree the
//! program decides whether the tree's index is the degree or one more.

mod solve;
mod transitions;
mod types;

use thiserror::Error;

use crate::coloring::{Color, ColoringError, Violation};
use crate::graph::EdgeId;
use crate::tree::TreeError;

pub use solve::{reconstruct_coloring, semistrong_index_rooted, semistrong_index_tree, solve_tree, DpSolution, TreeIndex};
pub use transitions::{
    check_system, find_merge, horizontal_merge, horizontal_merge_literal, merge_conditions, vertical_expand,
    witness_assignment, MergeArgs, MergeCase, Transfer,
};
pub use types::{classify_colors, ColorTypePartition, FeasibleSet, Owner, Quad};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("budget {budget} is below the maximum degree {max_degree}")]
    BudgetBelowDegree { budget: u32, max_degree: u32 },
    #[error("coloring is not semistrong: {0}")]
    NotSemistrong(Violation),
    #[error("edge {edge} has color {color} above budget {budget}")]
    ColorOverBudget { edge: EdgeId, color: Color, budget: u32 },
    #[error("tree is not colorable with {budget} colors")]
    Infeasible { budget: u32 },
    #[error("{0} is not in the root set")]
    NotInSet(types::Quad),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
