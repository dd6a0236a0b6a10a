use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::coloring::{Color, ColoringKind};
use crate::exact::{enumerate, EnumerationEnd, SolveRequest};
use crate::graph::EdgeId;

use super::gadget::{build_gadget, Gadget, GadgetKind};
use super::ReductionError;

/// Forced-color statements checked on every enumerated coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Join gadgets: the `k - 1` edges away from the attachment vertices get
    /// pairwise distinct colors.
    InteriorDistinct,
    /// Even join: `w1w2` differs from every other gadget edge.
    BridgeUnique,
    /// Quartic: the triangle edges are distinct and its three spokes share
    /// the fourth color.
    TriangleSpokes,
    /// Quartic: no `f` or `g` edge uses the spoke color.
    PathsAvoidSpokeColor,
    /// The two boundary edges agree.
    BoundaryEqual,
    /// Quartic: the boundary edges use the spoke color.
    BoundaryIsSpokeColor,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Claim::InteriorDistinct => "interior-distinct",
            Claim::BridgeUnique => "bridge-unique",
            Claim::TriangleSpokes => "triangle-spokes",
            Claim::PathsAvoidSpokeColor => "paths-avoid-spoke-color",
            Claim::BoundaryEqual => "boundary-equal",
            Claim::BoundaryIsSpokeColor => "boundary-is-spoke-color",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimViolation {
    pub claim: Claim,
    pub coloring: Vec<Color>,
}

/// Result of enumerating one graph (standalone or augmented gadget).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseReport {
    pub edges: usize,
    /// Colorings visited. Edge 0 is pinned to color 1, so this is the total
    /// divided by `k`.
    pub colorings: u64,
    pub checks: u64,
    pub violation_count: u64,
    /// The first few violations, for inspection.
    pub violations: Vec<ClaimViolation>,
    pub complete: bool,
    pub nodes: u64,
    /// Colorings whose boundary edges agree; informational where
    /// boundary equality is not one of the phase's claims.
    pub boundary_equal: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Full enumeration found no violation.
    Confirmed,
    /// Some coloring violates a claim, or a required coloring is missing.
    StructureFalsified,
    /// The node budget ran out before enumeration finished.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Verdict::Confirmed => "confirmed",
            Verdict::StructureFalsified => "structure-falsified",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub kind: GadgetKind,
    pub k: usize,
    pub standalone: PhaseReport,
    pub augmented: PhaseReport,
    /// The reference coloring used by the lift appears among the
    /// standalone colorings.
    pub reference_pattern_found: bool,
    pub verdict: Verdict,
}

const KEPT_VIOLATIONS: usize = 8;

/// Enumerates all semistrong `k`-colorings of the gadget and of its
/// pendant-augmented version and checks the forced-color claims on each.
/// `budget` bounds the search nodes of each phase.
pub fn verify_gadget_lemmas(kind: GadgetKind, k: usize, budget: Option<u64>) -> Result<GadgetReport, ReductionError> {
    let gadget = build_gadget(kind, k)?;
    let mut claims = vec![];
    match kind {
        GadgetKind::OddJoin => claims.push(Claim::InteriorDistinct),
        GadgetKind::EvenJoin => claims.extend([Claim::InteriorDistinct, Claim::BridgeUnique]),
        GadgetKind::Quartic => claims.extend([Claim::TriangleSpokes, Claim::PathsAvoidSpokeColor]),
    }
    let references: Vec<Vec<Color>> = (1..=k as Color)
        .map(|c| gadget.pattern(c))
        .filter(|p| p[0] == 1)
        .collect();
    let mut reference_pattern_found = false;
    let standalone = run_phase(&gadget, &gadget.graph, &claims, budget, |colors| {
        if references.iter().any(|r| r.as_slice() == colors) {
            reference_pattern_found = true;
        }
    })?;

    claims.push(Claim::BoundaryEqual);
    if kind == GadgetKind::Quartic {
        claims.push(Claim::BoundaryIsSpokeColor);
    }
    let augmented = run_phase(&gadget, &gadget.augmented(), &claims, budget, |_| {})?;

    let falsified = standalone.violation_count > 0
        || augmented.violation_count > 0
        || (standalone.complete && !reference_pattern_found);
    let verdict = if falsified {
        Verdict::StructureFalsified
    } else if standalone.complete && augmented.complete {
        Verdict::Confirmed
    } else {
        Verdict::Inconclusive
    };
    Ok(GadgetReport {
        kind,
        k,
        standalone,
        augmented,
        reference_pattern_found,
        verdict,
    })
}

fn run_phase(
    gadget: &Gadget,
    graph: &crate::graph::Graph,
    claims: &[Claim],
    budget: Option<u64>,
    mut observe: impl FnMut(&[Color]),
) -> Result<PhaseReport, ReductionError> {
    let mut req = SolveRequest::enumerate(graph, ColoringKind::Semistrong, gadget.k as Color);
    req.limits.node_budget = budget;
    let mut report = PhaseReport {
        edges: graph.edge_count(),
        colorings: 0,
        checks: 0,
        violation_count: 0,
        violations: Vec::new(),
        complete: false,
        nodes: 0,
        boundary_equal: 0,
    };
    let outcome = enumerate(&req, |colors| {
        observe(colors);
        if colors[gadget.boundary.0] == colors[gadget.boundary.1] {
            report.boundary_equal += 1;
        }
        for &claim in claims {
            report.checks += 1;
            if !holds(gadget, claim, colors) {
                report.violation_count += 1;
                if report.violations.len() < KEPT_VIOLATIONS {
                    report.violations.push(ClaimViolation {
                        claim,
                        coloring: colors.to_vec(),
                    });
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    report.colorings = outcome.count;
    report.nodes = outcome.nodes;
    report.complete = outcome.end == EnumerationEnd::Exhausted;
    Ok(report)
}

fn named(gadget: &Gadget, names: &[&str]) -> Vec<EdgeId> {
    names
        .iter()
        .map(|n| gadget.edge_named(n).expect("tag exists"))
        .collect()
}

fn all_distinct(colors: impl IntoIterator<Item = Color>) -> bool {
    let mut seen = 0u64;
    for c in colors {
        if seen & (1 << c) != 0 {
            return false;
        }
        seen |= 1 << c;
    }
    true
}

/// The common color of the three spokes, if they share one.
fn spoke_color(gadget: &Gadget, colors: &[Color]) -> Option<Color> {
    let spokes = named(gadget, &["e4", "e5", "e6"]);
    let c = colors[spokes[0]];
    spokes.iter().all(|&e| colors[e] == c).then_some(c)
}

fn holds(gadget: &Gadget, claim: Claim, colors: &[Color]) -> bool {
    match claim {
        Claim::InteriorDistinct => all_distinct(gadget.interior_edges().into_iter().map(|e| colors[e])),
        Claim::BridgeUnique => {
            let bridge = gadget.edge_named("w1w2").expect("even join has a bridge");
            (0..gadget.graph.edge_count()).all(|e| e == bridge || colors[e] != colors[bridge])
        }
        Claim::TriangleSpokes => {
            let triangle = named(gadget, &["e1", "e2", "e3"]);
            match spoke_color(gadget, colors) {
                Some(s) => all_distinct(triangle.iter().map(|&e| colors[e]).chain([s])),
                None => false,
            }
        }
        Claim::PathsAvoidSpokeColor => {
            let Some(s) = spoke_color(gadget, colors) else { return false };
            gadget
                .tags
                .iter()
                .filter(|(n, _)| n.starts_with('f') || n.starts_with('g'))
                .all(|&(_, e)| colors[e] != s)
        }
        Claim::BoundaryEqual => colors[gadget.boundary.0] == colors[gadget.boundary.1],
        Claim::BoundaryIsSpokeColor => {
            let Some(s) = spoke_color(gadget, colors) else { return false };
            colors[gadget.boundary.0] == s && colors[gadget.boundary.1] == s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_join_three_is_confirmed() {
        let report = verify_gadget_lemmas(GadgetKind::OddJoin, 3, None).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed, "{report:?}");
        assert_eq!(report.augmented.edges, 8);
        assert!(report.augmented.colorings > 0);
        assert!(report.reference_pattern_found);
        assert_eq!(report.augmented.boundary_equal, report.augmented.colorings);
    }

    #[test]
    fn standalone_join_boundary_is_free() {
        // without the pendants nothing ties the two boundary edges together
        let report = verify_gadget_lemmas(GadgetKind::OddJoin, 3, None).unwrap();
        assert!(report.standalone.boundary_equal < report.standalone.colorings);
    }

    #[test]
    fn claims_reject_wrong_colorings() {
        let q = build_gadget(GadgetKind::EvenJoin, 6).unwrap();
        let mut colors = q.pattern(1);
        assert!(holds(&q, Claim::BridgeUnique, &colors));
        let bridge = q.edge_named("w1w2").unwrap();
        colors[bridge] = colors[0];
        assert!(!holds(&q, Claim::BridgeUnique, &colors));

        let r = build_gadget(GadgetKind::Quartic, 4).unwrap();
        let good = r.pattern(2);
        for claim in [Claim::TriangleSpokes, Claim::PathsAvoidSpokeColor, Claim::BoundaryEqual, Claim::BoundaryIsSpokeColor] {
            assert!(holds(&r, claim, &good), "{claim}");
        }
        let mut bad = good.clone();
        bad[r.edge_named("h2").unwrap()] = 3;
        assert!(!holds(&r, Claim::BoundaryEqual, &bad));
        let mut bad = good;
        bad[r.edge_named("f1").unwrap()] = 2;
        assert!(!holds(&r, Claim::PathsAvoidSpokeColor, &bad));
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let report = verify_gadget_lemmas(GadgetKind::Quartic, 4, Some(50)).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(!report.standalone.complete);
    }
}
