//! Edge-replacement gadgets that turn proper `k`-edge-coloring of
//! `k`-regular graphs into semistrong `k`-edge-coloring, the coloring lift
//! and extraction across the replacement, and exhaustive checks of the
//! colors the gadgets force.

mod gadget;
mod lemmas;
mod transform;

use thiserror::Error;

use crate::coloring::{Color, ColoringError, Violation};
use crate::exact::SolveError;
use crate::graph::{EdgeId, GraphError};

pub use gadget::{build_gadget, Gadget, GadgetKind};
pub use lemmas::{verify_gadget_lemmas, Claim, ClaimViolation, GadgetReport, PhaseReport, Verdict};
pub use transform::{extract_coloring, lift_coloring, reduce, Placement, ReductionMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no gadget for degree {0}: need k = 4, odd k >= 3 or even k >= 6")]
    UnsupportedDegree(usize),
    #[error("unknown gadget kind `{0}`")]
    UnknownKind(String),
    #[error("gadget {kind} does not exist for k = {k}")]
    IncompatibleGadget { kind: GadgetKind, k: usize },
    #[error("input graph is not {k}-regular")]
    NotRegular { k: usize },
    #[error("source coloring is not proper: {0}")]
    NotProper(Violation),
    #[error("coloring is not semistrong: {0}")]
    NotSemistrong(Violation),
    #[error("source coloring uses palette {palette}, more than k = {k}")]
    PaletteTooLarge { palette: Color, k: usize },
    #[error("boundary edges of source edge {source_edge} disagree: {first} vs {second}")]
    BoundaryDisagreement { source_edge: EdgeId, first: Color, second: Color },
    #[error("graph or coloring does not match the reduction map")]
    MapMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
