//! Shared fixtures for the benchmarks.

use semistrong_core::generators;
use semistrong_core::tree::{root_tree, RootedTree};

/// Seeded random tree on `n` vertices with maximum degree at most `delta`,
/// rooted at vertex 0.
pub fn bounded_tree(n: usize, delta: usize, seed: u64) -> RootedTree {
    let g = generators::random_tree_bounded(n, delta, seed).expect("valid parameters");
    root_tree(&g, 0).expect("generated graph is a tree")
}

/// A caterpillar whose spine vertices all have degree `delta`: the densest
/// feasible-set workload for a given size.
pub fn caterpillar(spine: usize, delta: usize) -> RootedTree {
    assert!(spine >= 1 && delta >= 2);
    let mut edges = Vec::new();
    let mut next = spine;
    for i in 0..spine {
        if i + 1 < spine {
            edges.push((i, i + 1));
        }
        let spine_edges = usize::from(i > 0) + usize::from(i + 1 < spine);
        for _ in spine_edges..delta {
            edges.push((i, next));
            next += 1;
        }
    }
    let g = semistrong_core::Graph::new(next, edges).expect("caterpillar is simple");
    root_tree(&g, 0).expect("caterpillar is a tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caterpillar_is_regular_on_the_spine() {
        let t = caterpillar(5, 4);
        assert_eq!(t.graph().max_degree(), 4);
        for v in 0..5 {
            assert_eq!(t.graph().degree(v).unwrap(), 4);
        }
        assert!(t.graph().is_tree());
    }

    #[test]
    fn bounded_tree_respects_degree() {
        assert!(bounded_tree(500, 3, 1).graph().max_degree() <= 3);
    }
}
