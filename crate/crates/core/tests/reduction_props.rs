//! Reduced-graph structure and the lift/extract pair over every proper
//! coloring of the small test instances.

use std::ops::ControlFlow;

use proptest::prelude::*;
use semistrong_core::coloring::{verify_coloring, Color, ColoringKind, EdgeColoring};
use semistrong_core::exact::{enumerate, SolveRequest};
use semistrong_core::generators;
use semistrong_core::graph::Graph;
use semistrong_core::reduction::{build_gadget, extract_coloring, lift_coloring, reduce, GadgetKind};

fn instances() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("K4", generators::complete(4).unwrap(), 3),
        ("K3,3", generators::complete_bipartite(3, 3).unwrap(), 3),
        ("Q3", generators::hypercube(3).unwrap(), 3),
        ("C8(1,2)", generators::circulant(8, &[1, 2]).unwrap(), 4),
        ("K6", generators::complete(6).unwrap(), 5),
        ("K7", generators::complete(7).unwrap(), 6),
    ]
}

#[test]
fn reduced_graph_structure() {
    for (name, g, k) in instances() {
        let (h, map) = reduce(&g, k).unwrap();
        let per_gadget = if k == 4 { 20 } else { k + 1 };
        assert_eq!(h.edge_count(), per_gadget * g.edge_count(), "{name}");
        assert_eq!(h.max_degree(), k, "{name}");
        for v in 0..g.vertex_count() {
            assert_eq!(h.degree(v).unwrap(), k, "{name} vertex {v}");
        }
        let mut next_vertex = g.vertex_count();
        let mut next_edge = 0;
        for (src, place) in map.gadgets.iter().enumerate() {
            assert_eq!(place.endpoints, g.edge(src));
            assert_eq!(place.vertex_range.0, next_vertex);
            assert_eq!(place.edge_range.0, next_edge);
            next_vertex = place.vertex_range.1;
            next_edge = place.edge_range.1;
            // gadget edges stay inside the gadget or touch its own endpoints
            for e in place.edge_range.0..place.edge_range.1 {
                let (a, b) = h.edge(e);
                for x in [a, b] {
                    let inside = (place.vertex_range.0..place.vertex_range.1).contains(&x);
                    assert!(inside || x == place.endpoints.0 || x == place.endpoints.1);
                }
            }
        }
        assert_eq!(next_vertex, h.vertex_count());
        assert_eq!(next_edge, h.edge_count());
    }
}

#[test]
fn gadget_edge_counts() {
    for k in [3, 5, 7, 9, 11] {
        assert_eq!(build_gadget(GadgetKind::OddJoin, k).unwrap().graph.edge_count(), k + 1);
    }
    for k in [6, 8, 10, 12] {
        let q = build_gadget(GadgetKind::EvenJoin, k).unwrap();
        assert_eq!(q.graph.edge_count(), k + 1);
        assert!(q.graph.max_degree() <= k);
    }
    assert_eq!(build_gadget(GadgetKind::Quartic, 4).unwrap().graph.edge_count(), 20);
}

#[test]
fn every_proper_coloring_lifts_and_extracts() {
    for (name, g, k) in instances().into_iter().filter(|(_, g, _)| g.edge_count() <= 16) {
        let (h, map) = reduce(&g, k).unwrap();
        let req = SolveRequest::enumerate(&g, ColoringKind::Proper, k as Color).with_cap(2000);
        let mut lifted = 0;
        enumerate(&req, |colors| {
            let phi = EdgeColoring::new(colors.to_vec(), k as Color).unwrap();
            let psi = lift_coloring(&g, &map, &phi).unwrap();
            assert!(verify_coloring(&h, &psi, ColoringKind::Semistrong).unwrap().ok(), "{name} {colors:?}");
            assert_eq!(extract_coloring(&h, &map, &psi).unwrap(), phi);
            lifted += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(lifted > 0, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabeled_colorings_lift(perm in Just((1..=4u32).collect::<Vec<_>>()).prop_shuffle()) {
        let g = generators::circulant(8, &[1, 2]).unwrap();
        let (h, map) = reduce(&g, 4).unwrap();
        let req = SolveRequest::enumerate(&g, ColoringKind::Proper, 4).with_cap(1);
        let mut base = Vec::new();
        enumerate(&req, |colors| {
            base = colors.to_vec();
            ControlFlow::Break(())
        })
        .unwrap();
        let colors: Vec<Color> = base.iter().map(|&c| perm[c as usize - 1]).collect();
        let phi = EdgeColoring::new(colors, 4).unwrap();
        let psi = lift_coloring(&g, &map, &phi).unwrap();
        prop_assert!(verify_coloring(&h, &psi, ColoringKind::Semistrong).unwrap().ok());
        prop_assert_eq!(extract_coloring(&h, &map, &psi).unwrap(), phi);
    }
}
