use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::ValueEnum;
use semistrong_core::coloring::{render_coloring, verify_coloring, Color, EdgeColoring, Violation};
use semistrong_core::dp::{reconstruct_coloring, semistrong_index_rooted, solve_tree, DpError, Quad};
use semistrong_core::exact::{
    decide, enumerate, min_colors, Decision, EnumerationEnd, MinColors, Mode, SolveError, SolveRequest,
};
use semistrong_core::generators;
use semistrong_core::graph::{render_graph, Graph, GraphError};
use semistrong_core::reduction::{
    build_gadget, extract_coloring, lift_coloring, reduce as reduce_graph, verify_gadget_lemmas, GadgetKind,
    ReductionError, Verdict,
};
use semistrong_core::tree::{RootedTree, TreeError};
use semistrong_core::ColoringKind;
use serde::Serialize;

use crate::report::{write_file, Failure, Inputs, Outcome, EXIT_FAILED, EXIT_OK, EXIT_UNKNOWN};
use crate::{BenchArgs, ExactArgs, Family, GadgetArgs, GenArgs, ReduceArgs, SolveArgs, TreeFamily, VerifyArgs};

fn rooted(g: Graph, root: usize) -> Result<RootedTree, Failure> {
    RootedTree::new(g, root).map_err(|e| match e {
        TreeError::Graph(e) => Failure::usage(e.to_string()),
        e => Failure::failed(e.to_string()),
    })
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::failed(format!("internal error: {e}"))
}

/// Re-checks a coloring produced by the library before it is reported.
fn checked(g: &Graph, phi: EdgeColoring, kind: ColoringKind) -> Result<EdgeColoring, Failure> {
    match verify_coloring(g, &phi, kind).map_err(internal)?.violation {
        None => Ok(phi),
        Some(v) => Err(internal(format!("produced coloring is not {kind}: {v}"))),
    }
}

fn path_string(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Serialize)]
struct SolvePayload {
    vertices: usize,
    edges: usize,
    max_degree: u32,
    root: usize,
    budget: Option<u32>,
    feasible: bool,
    index: Option<u32>,
    root_tuple: Option<Quad>,
    coloring_file: Option<String>,
}

pub fn solve(a: &SolveArgs, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let g = inputs.graph("graph", &a.input)?;
    let tree = rooted(g, a.root)?;
    let g = tree.graph();
    let max_degree = g.max_degree() as u32;
    let mut payload = SolvePayload {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree,
        root: a.root,
        budget: a.budget,
        feasible: false,
        index: None,
        root_tuple: None,
        coloring_file: None,
    };
    let mut text = String::new();
    let coloring = match a.budget {
        Some(budget) => {
            let found = match solve_tree(&tree, budget) {
                Ok(sol) => match sol.first_root_tuple() {
                    Some(x) => Some((x, reconstruct_coloring(&tree, &sol, x).map_err(internal)?.0)),
                    None => None,
                },
                Err(DpError::BudgetBelowDegree { .. }) => None,
                Err(e) => return Err(internal(e)),
            };
            let verdict = if found.is_some() { "feasible" } else { "infeasible" };
            let _ = writeln!(text, "budget {budget}: {verdict}");
            found.map(|(x, phi)| {
                payload.feasible = true;
                payload.root_tuple = Some(x);
                phi
            })
        }
        None => {
            let result = semistrong_index_rooted(&tree).map_err(internal)?;
            payload.feasible = true;
            payload.index = Some(result.index);
            payload.root_tuple = result.root_tuple;
            let _ = writeln!(text, "index {}", result.index);
            Some(result.coloring)
        }
    };
    let _ = writeln!(text, "max degree {max_degree}");
    if let Some(x) = payload.root_tuple {
        let _ = writeln!(text, "root type {x}");
    }
    if let (Some(path), Some(phi)) = (&a.emit_coloring, coloring) {
        let phi = checked(g, phi, ColoringKind::Semistrong)?;
        write_file(path, &render_coloring(&phi))?;
        payload.coloring_file = Some(path_string(path));
        let _ = writeln!(text, "coloring written to {}", path.display());
    }
    Ok(Outcome::new(EXIT_OK, payload, text))
}

#[derive(Serialize)]
struct ExactPayload {
    kind: ColoringKind,
    mode: Mode,
    palette: Option<Color>,
    symmetry: bool,
    result: &'static str,
    min_colors: Option<Color>,
    lower_bound: Option<Color>,
    count: Option<u64>,
    end: Option<EnumerationEnd>,
    nodes: u64,
    coloring_file: Option<String>,
}

fn solve_failure(e: SolveError) -> Failure {
    Failure::usage(e.to_string())
}

pub fn exact(a: &ExactArgs, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let g = inputs.graph("graph", &a.input)?;
    let mut req = match (a.palette, a.enumerate) {
        (None, _) => SolveRequest::minimize(&g, a.kind),
        (Some(p), false) => SolveRequest::decide(&g, a.kind, p),
        (Some(p), true) => SolveRequest::enumerate(&g, a.kind, p),
    }
    .with_symmetry(!a.no_symmetry);
    req.limits.node_budget = a.node_budget;
    req.limits.solution_cap = a.cap;
    let mut payload = ExactPayload {
        kind: a.kind,
        mode: req.mode,
        palette: a.palette,
        symmetry: req.symmetry,
        result: "",
        min_colors: None,
        lower_bound: None,
        count: None,
        end: None,
        nodes: 0,
        coloring_file: None,
    };
    let mut witness = None;
    let mut code = EXIT_OK;
    let text;
    match req.mode {
        Mode::Minimize if g.edge_count() == 0 => {
            payload.result = "exact";
            payload.min_colors = Some(0);
            text = "min colors 0".to_string();
        }
        Mode::Minimize => {
            let out = min_colors(&req).map_err(solve_failure)?;
            payload.nodes = out.nodes;
            match out.result {
                MinColors::Exact { colors, witness: w } => {
                    payload.result = "exact";
                    payload.min_colors = Some(colors);
                    witness = Some(w);
                    text = format!("min colors {colors}");
                }
                MinColors::Unknown { lower_bound } => {
                    payload.result = "unknown";
                    payload.lower_bound = Some(lower_bound);
                    code = EXIT_UNKNOWN;
                    text = format!("unknown: budget exhausted, at least {lower_bound} colors");
                }
            }
        }
        Mode::Decide => {
            let out = decide(&req).map_err(solve_failure)?;
            payload.nodes = out.nodes;
            payload.result = match out.decision {
                Decision::Feasible(w) => {
                    witness = Some(w);
                    "feasible"
                }
                Decision::Infeasible => "infeasible",
                Decision::Unknown => {
                    code = EXIT_UNKNOWN;
                    "unknown"
                }
            };
            text = format!("{} with {} colors", payload.result, req.palette_size);
        }
        Mode::Enumerate => {
            let mut first = None;
            let out = enumerate(&req, |colors| {
                if first.is_none() {
                    first = Some(colors.to_vec());
                }
                std::ops::ControlFlow::Continue(())
            })
            .map_err(solve_failure)?;
            payload.nodes = out.nodes;
            payload.count = Some(out.count);
            payload.end = Some(out.end);
            payload.result = match out.end {
                EnumerationEnd::Exhausted => "exhausted",
                EnumerationEnd::CapReached | EnumerationEnd::Stopped => "capped",
                EnumerationEnd::BudgetExhausted => {
                    code = EXIT_UNKNOWN;
                    "unknown"
                }
            };
            if let Some(colors) = first {
                witness = Some(EdgeColoring::new(colors, req.palette_size).map_err(internal)?);
            }
            let pinned = if req.symmetry { " (edge 0 pinned to color 1)" } else { "" };
            text = format!("colorings {}{pinned}, {}", out.count, payload.result);
        }
    }
    let mut text = text;
    if let (Some(path), Some(phi)) = (&a.emit_coloring, witness) {
        let phi = checked(&g, phi, a.kind)?;
        write_file(path, &render_coloring(&phi))?;
        payload.coloring_file = Some(path_string(path));
        let _ = write!(text, "\ncoloring written to {}", path.display());
    }
    Ok(Outcome::new(code, payload, text))
}

#[derive(Serialize)]
struct VerifyPayload {
    kind: ColoringKind,
    pass: bool,
    colors_used: usize,
    violation: Option<Violation>,
}

pub fn verify(a: &VerifyArgs, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let g = inputs.graph("graph", &a.input)?;
    let phi = inputs.coloring("coloring", &a.coloring, &g)?;
    let check = verify_coloring(&g, &phi, a.kind).map_err(|e| Failure::usage(e.to_string()))?;
    let (code, text) = match &check.violation {
        None => (EXIT_OK, format!("pass: {} coloring", a.kind)),
        Some(v) => (EXIT_FAILED, format!("fail: {v}")),
    };
    let payload = VerifyPayload {
        kind: a.kind,
        pass: check.ok(),
        colors_used: phi.distinct_colors(),
        violation: check.violation,
    };
    Ok(Outcome::new(code, payload, text))
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::NotRegular { .. }
        | ReductionError::NotProper(_)
        | ReductionError::NotSemistrong(_)
        | ReductionError::PaletteTooLarge { .. }
        | ReductionError::BoundaryDisagreement { .. } => Failure::failed(e.to_string()),
        e => Failure::usage(e.to_string()),
    }
}

#[derive(Serialize)]
struct ReducePayload {
    k: usize,
    gadget: GadgetKind,
    source_vertices: usize,
    source_edges: usize,
    target_vertices: usize,
    target_edges: usize,
    graph_file: String,
    map_file: String,
    coloring: Option<BTreeMap<&'static str, String>>,
}

pub fn reduce(a: &ReduceArgs, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let gadget = GadgetKind::for_degree(a.k).map_err(reduction_failure)?;
    let g = inputs.graph("graph", &a.input)?;
    let (h, map) = reduce_graph(&g, a.k).map_err(reduction_failure)?;
    let map_path = a.map.clone().unwrap_or_else(|| {
        let mut p = a.output.clone().into_os_string();
        p.push(".map.json");
        PathBuf::from(p)
    });
    write_file(&a.output, &render_graph(&h))?;
    write_file(&map_path, &(serde_json::to_string_pretty(&map).map_err(internal)? + "\n"))?;
    let mut text = format!(
        "reduced {} vertices / {} edges to {} vertices / {} edges with gadget {gadget}\ngraph written to {}\nmap written to {}",
        g.vertex_count(),
        g.edge_count(),
        h.vertex_count(),
        h.edge_count(),
        a.output.display(),
        map_path.display()
    );
    let mut coloring = None;
    if let Some(out) = &a.coloring_output {
        let (mode, result) = if let Some(path) = &a.lift {
            let phi = inputs.coloring("coloring", path, &g)?;
            ("lift", lift_coloring(&g, &map, &phi).map_err(reduction_failure)?)
        } else if let Some(path) = &a.extract {
            let psi = inputs.coloring("coloring", path, &h)?;
            ("extract", extract_coloring(&h, &map, &psi).map_err(reduction_failure)?)
        } else {
            return Err(Failure::usage("--coloring-output needs --lift or --extract"));
        };
        write_file(out, &render_coloring(&result))?;
        let _ = write!(text, "\n{mode}ed coloring written to {}", out.display());
        coloring = Some(BTreeMap::from([("mode", mode.to_string()), ("file", path_string(out))]));
    }
    let payload = ReducePayload {
        k: a.k,
        gadget,
        source_vertices: map.source_vertices,
        source_edges: map.source_edges,
        target_vertices: map.target_vertices,
        target_edges: map.target_edges,
        graph_file: path_string(&a.output),
        map_file: path_string(&map_path),
        coloring,
    };
    Ok(Outcome::new(EXIT_OK, payload, text))
}

#[derive(Serialize)]
struct GadgetPayload {
    kind: GadgetKind,
    k: usize,
    augmented: bool,
    vertices: usize,
    edges: usize,
    attachments: (usize, usize),
    tagged: BTreeMap<String, usize>,
    graph: Option<String>,
    lemmas: Option<semistrong_core::reduction::GadgetReport>,
}

pub fn gadget(a: &GadgetArgs) -> Result<Outcome, Failure> {
    let gadget = build_gadget(a.kind, a.k).map_err(reduction_failure)?;
    let graph = if a.augmented { gadget.augmented() } else { gadget.graph.clone() };
    let tagged: BTreeMap<String, usize> = gadget.tags.iter().cloned().collect();
    let mut text = format!(
        "gadget {} k={}{}: {} vertices, {} edges",
        a.kind,
        a.k,
        if a.augmented { " augmented" } else { "" },
        graph.vertex_count(),
        graph.edge_count()
    );
    let mut payload = GadgetPayload {
        kind: a.kind,
        k: a.k,
        augmented: a.augmented,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        attachments: (gadget.u, gadget.v),
        tagged,
        graph: None,
        lemmas: None,
    };
    match &a.output {
        Some(path) => {
            write_file(path, &render_graph(&graph))?;
            let _ = write!(text, "\ngraph written to {}", path.display());
        }
        None if !a.verify => payload.graph = Some(render_graph(&graph)),
        None => {}
    }
    if let Some(path) = &a.map {
        write_file(path, &(serde_json::to_string_pretty(&payload.tagged).map_err(internal)? + "\n"))?;
        let _ = write!(text, "\nedge names written to {}", path.display());
    }
    let mut code = EXIT_OK;
    if a.verify {
        let report = verify_gadget_lemmas(a.kind, a.k, a.node_budget).map_err(reduction_failure)?;
        for (name, phase) in [("standalone", &report.standalone), ("augmented", &report.augmented)] {
            let _ = write!(
                text,
                "\n{name}: {} edges, {} colorings, {} checks, {} violations, {}",
                phase.edges,
                phase.colorings,
                phase.checks,
                phase.violation_count,
                if phase.complete { "complete" } else { "incomplete" }
            );
        }
        let _ = write!(text, "\nverdict: {}", report.verdict);
        code = match report.verdict {
            Verdict::Confirmed => EXIT_OK,
            Verdict::StructureFalsified => EXIT_FAILED,
            Verdict::Inconclusive => EXIT_UNKNOWN,
        };
        payload.lemmas = Some(report);
    }
    if let Some(g) = &payload.graph {
        text = format!("{}\n{}", g.trim_end(), text.lines().map(|l| format!("# {l}")).collect::<Vec<_>>().join("\n"));
    }
    Ok(Outcome::new(code, payload, text))
}

fn graph_failure(e: GraphError) -> Failure {
    Failure::usage(e.to_string())
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

#[derive(Serialize)]
struct GenPayload {
    family: String,
    vertices: usize,
    edges: usize,
    max_degree: usize,
    seed: Option<u64>,
    file: Option<String>,
    graph: Option<String>,
}

pub fn gen(a: &GenArgs) -> Result<Outcome, Failure> {
    let (g, seeded) = match a.family {
        Family::Path => (generators::path(a.n), false),
        Family::Cycle => (generators::cycle(a.n), false),
        Family::Star => (generators::star(a.n), false),
        Family::Complete => (generators::complete(a.n), false),
        Family::Bipartite => (generators::complete_bipartite(a.n, a.m), false),
        Family::Circulant => (generators::circulant(a.n, &a.offsets), false),
        Family::Petersen => (Ok(generators::petersen()), false),
        Family::Hypercube => (generators::hypercube(a.n as u32), false),
        Family::RandomTree => match a.delta {
            Some(d) => (generators::random_tree_bounded(a.n, d, a.seed), true),
            None => (generators::random_tree(a.n, a.seed), true),
        },
        Family::RandomGraph => (generators::random_graph(a.n, a.p, a.seed), true),
    };
    let g = g.map_err(graph_failure)?;
    let family = value_name(&a.family);
    let seed = seeded.then_some(a.seed);
    let mut header = format!("# {family} n={}", a.n);
    if let Some(s) = seed {
        let _ = write!(header, " seed={s}");
    }
    let body = format!("{header}\n{}", render_graph(&g));
    let mut payload = GenPayload {
        family,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        seed,
        file: None,
        graph: None,
    };
    let text = match &a.output {
        Some(path) => {
            write_file(path, &body)?;
            payload.file = Some(path_string(path));
            format!(
                "{} vertices, {} edges written to {}",
                g.vertex_count(),
                g.edge_count(),
                path.display()
            )
        }
        None => {
            payload.graph = Some(body.clone());
            body
        }
    };
    Ok(Outcome::new(EXIT_OK, payload, text))
}

#[derive(Serialize)]
struct BenchRow {
    family: String,
    n: usize,
    delta: u32,
    budget: u32,
    feasible: bool,
    millis: f64,
}

#[derive(Serialize)]
struct BenchPayload {
    seed: u64,
    repeats: usize,
    rows: Vec<BenchRow>,
    file: Option<String>,
}

pub const CSV_HEADER: &str = "family,n,delta,budget,feasible,millis";

pub fn bench(a: &BenchArgs) -> Result<Outcome, Failure> {
    let family = value_name(&a.family);
    let repeats = a.repeats.max(1);
    let mut rows = Vec::new();
    for (i, &n) in a.n.iter().enumerate() {
        let seed = a.seed.wrapping_add(i as u64);
        let g = match (a.family, a.delta) {
            (TreeFamily::RandomTree, Some(d)) => generators::random_tree_bounded(n, d, seed),
            (TreeFamily::RandomTree, None) => generators::random_tree(n, seed),
            (TreeFamily::Path, _) => generators::path(n),
            (TreeFamily::Star, _) => generators::star(n),
        }
        .map_err(graph_failure)?;
        let tree = rooted(g, 0)?;
        let delta = tree.graph().max_degree() as u32;
        for budget in [delta, delta + 1] {
            let mut best = Duration::MAX;
            let mut feasible = false;
            for _ in 0..repeats {
                let start = Instant::now();
                let sol = solve_tree(&tree, budget).map_err(internal)?;
                best = best.min(start.elapsed());
                feasible = sol.feasible();
            }
            rows.push(BenchRow {
                family: family.clone(),
                n,
                delta,
                budget,
                feasible,
                millis: (best.as_secs_f64() * 1e6).round() / 1e3,
            });
            if feasible {
                break;
            }
        }
    }
    let mut csv = format!("{CSV_HEADER}\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{},{},{:.3}", r.family, r.n, r.delta, r.budget, r.feasible, r.millis);
    }
    let text = match &a.output {
        Some(path) => {
            write_file(path, &csv)?;
            format!("{} rows written to {}", rows.len(), path.display())
        }
        None => csv,
    };
    let payload = BenchPayload {
        seed: a.seed,
        repeats,
        rows,
        file: a.output.as_deref().map(path_string),
    };
    Ok(Outcome::new(EXIT_OK, payload, text))
}
