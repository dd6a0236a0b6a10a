//! Semistrong edge coloring: graph model, class verifiers, an exhaustive
//! solver, a polynomial-time dynamic program for trees and the gadgets of
//! the hardness reduction for 4-regular graphs.

pub mod coloring;
pub mod dp;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod reduction;
pub mod tree;

pub use coloring::{
    classify_matching, one_vertices, verify_coloring, Color, ColoringError, ColoringKind, EdgeColoring,
    MatchingClass, Verification, Violation, ViolationReason,
};
pub use dp::{classify_colors, semistrong_index_tree, solve_tree, DpError, FeasibleSet, Quad};
pub use exact::{decide, enumerate, min_colors, Decision, EnumerationEnd, Limits, Mode, SolveError, SolveRequest};
pub use graph::{parse_graph, render_graph, EdgeId, Graph, GraphError, Vertex};
pub use tree::{root_tree, RootedTree, TreeError};
pub use reduction::{
    build_gadget, extract_coloring, lift_coloring, reduce, verify_gadget_lemmas, GadgetKind, ReductionError,
    ReductionMap,
};
