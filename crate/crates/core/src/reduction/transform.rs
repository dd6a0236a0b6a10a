use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::coloring::{verify_coloring, Color, ColoringKind, EdgeColoring};
use crate::graph::{EdgeId, Graph, Vertex};

use super::gadget::{build_gadget, GadgetKind};
use super::ReductionError;

/// Where the gadget of one source edge sits inside the reduced graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub gadget_kind: GadgetKind,
    /// The source edge's endpoints, which are also vertices of the target.
    pub endpoints: (Vertex, Vertex),
    /// Half-open range of the gadget's own (non-attachment) vertices.
    pub vertex_range: (Vertex, Vertex),
    /// Half-open range of the gadget's edges.
    pub edge_range: (EdgeId, EdgeId),
    #[serde(serialize_with = "ordered_map")]
    pub tagged: Vec<(String, EdgeId)>,
    #[serde(skip)]
    pub boundary: (EdgeId, EdgeId),
}

fn ordered_map<S: Serializer>(pairs: &[(String, EdgeId)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(pairs.len()))?;
    for (name, e) in pairs {
        map.serialize_entry(name, e)?;
    }
    map.end()
}

/// Correspondence between a `k`-regular source graph and its reduced graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionMap {
    pub k: usize,
    pub source_vertices: usize,
    pub source_edges: usize,
    pub target_vertices: usize,
    pub target_edges: usize,
    /// Indexed by source edge.
    #[serde(serialize_with = "indexed_map")]
    pub gadgets: Vec<Placement>,
}

fn indexed_map<S: Serializer>(items: &[Placement], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(items.len()))?;
    for (i, p) in items.iter().enumerate() {
        map.serialize_entry(&i.to_string(), p)?;
    }
    map.end()
}

/// Replaces every edge of the `k`-regular graph `g` by a gadget. The source
/// vertices keep their indices; gadget vertices and edges follow in source
/// edge order.
pub fn reduce(g: &Graph, k: usize) -> Result<(Graph, ReductionMap), ReductionError> {
    let kind = GadgetKind::for_degree(k)?;
    if !g.is_regular(k) {
        return Err(ReductionError::NotRegular { k });
    }
    let gadget = build_gadget(kind, k)?;
    let inner = gadget.graph.vertex_count() - 2;
    let mut next = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() * gadget.graph.edge_count());
    let mut gadgets = Vec::with_capacity(g.edge_count());
    for &(a, b) in g.edges() {
        let start = next;
        let lift = |x: Vertex| match x {
            x if x == gadget.u => a,
            x if x == gadget.v => b,
            x => start + x - 2,
        };
        let first_edge = edges.len();
        edges.extend(gadget.graph.edges().iter().map(|&(x, y)| (lift(x), lift(y))));
        next += inner;
        gadgets.push(Placement {
            gadget_kind: kind,
            endpoints: (a, b),
            vertex_range: (start, next),
            edge_range: (first_edge, edges.len()),
            tagged: gadget.tags.iter().map(|(n, e)| (n.clone(), first_edge + e)).collect(),
            boundary: (first_edge + gadget.boundary.0, first_edge + gadget.boundary.1),
        });
    }
    let h = Graph::new(next, edges)?;
    let map = ReductionMap {
        k,
        source_vertices: g.vertex_count(),
        source_edges: g.edge_count(),
        target_vertices: h.vertex_count(),
        target_edges: h.edge_count(),
        gadgets,
    };
    Ok((h, map))
}

/// Lifts a proper `k`-edge-coloring of the source to a semistrong
/// `k`-edge-coloring of the reduced graph, gadget by gadget.
pub fn lift_coloring(g: &Graph, map: &ReductionMap, phi: &EdgeColoring) -> Result<EdgeColoring, ReductionError> {
    check_map(g, map)?;
    if phi.palette() as usize > map.k {
        return Err(ReductionError::PaletteTooLarge {
            palette: phi.palette(),
            k: map.k,
        });
    }
    let proper = verify_coloring(g, phi, ColoringKind::Proper)?;
    if let Some(v) = proper.violation {
        return Err(ReductionError::NotProper(v));
    }
    let kind = GadgetKind::for_degree(map.k)?;
    let gadget = build_gadget(kind, map.k)?;
    let mut colors = vec![0; map.target_edges];
    for (src, place) in map.gadgets.iter().enumerate() {
        let pattern = gadget.pattern(phi.color(src));
        colors[place.edge_range.0..place.edge_range.1].copy_from_slice(&pattern);
    }
    Ok(EdgeColoring::new(colors, map.k as Color)?)
}

/// Reads a source coloring off the boundary edges of a semistrong coloring
/// of the reduced graph. Disagreeing boundary colors within one gadget are
/// reported before the semistrong check, never resolved.
pub fn extract_coloring(h: &Graph, map: &ReductionMap, psi: &EdgeColoring) -> Result<EdgeColoring, ReductionError> {
    if h.edge_count() != map.target_edges || h.vertex_count() != map.target_vertices {
        return Err(ReductionError::MapMismatch);
    }
    psi.check_against(h)?;
    let mut colors = Vec::with_capacity(map.source_edges);
    for (src, place) in map.gadgets.iter().enumerate() {
        let (a, b) = (psi.color(place.boundary.0), psi.color(place.boundary.1));
        if a != b {
            return Err(ReductionError::BoundaryDisagreement {
                source_edge: src,
                first: a,
                second: b,
            });
        }
        colors.push(a);
    }
    let check = verify_coloring(h, psi, ColoringKind::Semistrong)?;
    if let Some(v) = check.violation {
        return Err(ReductionError::NotSemistrong(v));
    }
    let phi = EdgeColoring::new(colors, map.k as Color)?;
    let source = Graph::new(
        map.source_vertices,
        map.gadgets.iter().map(|p| p.endpoints).collect(),
    )?;
    if let Some(v) = verify_coloring(&source, &phi, ColoringKind::Proper)?.violation {
        return Err(ReductionError::NotProper(v));
    }
    Ok(phi)
}

fn check_map(g: &Graph, map: &ReductionMap) -> Result<(), ReductionError> {
    let same = g.vertex_count() == map.source_vertices
        && g.edge_count() == map.source_edges
        && g.edges().iter().zip(&map.gadgets).all(|(&e, p)| e == p.endpoints);
    if same {
        Ok(())
    } else {
        Err(ReductionError::MapMismatch)
    }
}
