//! JSON input and output formats shared by the CLI and the bindings, and the
//! DOT export of directed 1-skeletons.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::braid::VOrientation;
use crate::complex::{CubeComplex, CurvatureVerdict, DirectedComplex, Orientation};
use crate::error::{Error, Result};
use crate::incidence::{Cycle, EdgeSet, Hypergraph, Mode, VertexSet};
use crate::labelings::{Labeling, Rat};
use crate::words::{Presentation, Word};

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    id: String,
    ends: Vec<String>,
}

/// Reads `{"vertices": [id...], "edges": [{"id": id, "ends": [id...]}...]}`.
/// Graph mode requires exactly two ends per edge.
pub fn read_hypergraph(text: &str, mode: Mode) -> Result<Arc<Hypergraph>> {
    let file: HypergraphFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let edges: Vec<(String, Vec<String>)> =
        file.edges.into_iter().map(|e| (e.id, e.ends)).collect();
    match mode {
        Mode::Graph => Hypergraph::graph(file.vertices, edges),
        Mode::Hypergraph => Hypergraph::hypergraph(file.vertices, edges),
    }
}

pub fn hypergraph_to_json(g: &Arc<Hypergraph>) -> Value {
    json!({
        "vertices": g.vertex_ids(),
        "edges": (0..g.edge_count()).map(|e| json!({
            "id": g.edge_id(e),
            "ends": g.edge_vertices(e).map(|v| g.vertex_id(v)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
struct OrientationFile {
    cycles: Vec<OrientationEntry>,
}

#[derive(Deserialize)]
struct OrientationEntry {
    edges: Vec<String>,
    #[serde(default)]
    half: Option<Vec<String>>,
    #[serde(default)]
    v_half: Option<Vec<String>>,
}

/// Reads an orientation file: per even cycle (by sorted edge ids) an optional
/// distinguished half and/or v-half. Cycles not listed fall back to the
/// smallest-id defaults.
pub fn read_orientation(
    text: &str,
    graph: &Arc<Hypergraph>,
) -> Result<(Orientation, VOrientation)> {
    let file: OrientationFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut orientation = Orientation::new();
    let mut v_orientation = VOrientation::new();
    for entry in file.cycles {
        let edges = EdgeSet::from_ids(graph, entry.edges.iter())?;
        let cycle = Cycle::classify(&edges)?;
        if let Some(half) = entry.half {
            let half = EdgeSet::from_ids(graph, half.iter())?;
            orientation.set_half(&cycle, &half)?;
        }
        if let Some(v_half) = entry.v_half {
            let v_half = VertexSet::from_ids(graph, v_half.iter())?;
            v_orientation.set_v_half(&cycle, &v_half)?;
        }
    }
    Ok((orientation, v_orientation))
}

/// Parses `"p/q"`, `"p"`, or a JSON integer into an exact rational in `[0,1]`
/// (range unchecked here).
pub fn parse_rational(text: &str) -> Result<Rat> {
    let parse_int = |s: &str| -> Result<i64> {
        s.trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad rational {text:?}: {e}")))
    };
    match text.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == 0 {
                return Err(Error::Parse(format!("bad rational {text:?}: zero denominator")));
            }
            Ok(Rat::new(parse_int(p)?, denom))
        }
    }
}

pub fn rational_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reads `{"labels": {"edge-id": "p/q", ...}}`; missing edges are 0.
pub fn read_labeling(text: &str, graph: &Arc<Hypergraph>) -> Result<Labeling> {
    #[derive(Deserialize)]
    struct LabelingFile {
        labels: std::collections::BTreeMap<String, Value>,
    }
    let file: LabelingFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut values = vec![Rat::from_integer(0); graph.edge_count()];
    for (id, raw) in file.labels {
        let e = graph
            .edge_index(&id)
            .ok_or(Error::UnknownEdge { id })?;
        values[e] = match raw {
            Value::String(s) => parse_rational(&s)?,
            Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("label {n} is not exact; use \"p/q\"")))?;
                Rat::from_integer(i)
            }
            other => return Err(Error::Parse(format!("bad label value {other}"))),
        };
    }
    Labeling::new(graph, values)
}

pub fn labeling_to_json(l: &Labeling) -> Value {
    let graph = l.graph();
    json!({
        "labels": (0..graph.edge_count())
            .map(|e| (graph.edge_id(e).to_owned(), Value::String(rational_string(&l.value(e)))))
            .collect::<serde_json::Map<String, Value>>(),
    })
}

/// Exports a complex as
/// `{"vertices": [[edge ids]...], "cubes": [{"dim", "min_vertex", "antipode", "directions"}...]}`.
pub fn complex_to_json(x: &CubeComplex) -> Value {
    json!({
        "vertices": x.vertices().iter().map(|v| v.ids()).collect::<Vec<_>>(),
        "cubes": x.cubes().map(|(key, cube)| json!({
            "dim": cube.dim(),
            "min_vertex": key.min_vertex.ids(),
            "antipode": key.antipode.ids(),
            "directions": cube.directions.iter().map(|c| c.edges().ids()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn complex_from_json(value: &Value, graph: &Arc<Hypergraph>) -> Result<CubeComplex> {
    #[derive(Deserialize)]
    struct ComplexFile {
        vertices: Vec<Vec<String>>,
        cubes: Vec<CubeFile>,
    }
    #[derive(Deserialize)]
    struct CubeFile {
        min_vertex: Vec<String>,
        directions: Vec<Vec<String>>,
    }
    let file: ComplexFile =
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let vertices: Vec<EdgeSet> = file
        .vertices
        .iter()
        .map(|ids| EdgeSet::from_ids(graph, ids.iter()))
        .collect::<Result<_>>()?;
    let mut parts = Vec::new();
    for cube in file.cubes {
        let base = EdgeSet::from_ids(graph, cube.min_vertex.iter())?;
        let directions = cube
            .directions
            .iter()
            .map(|ids| Cycle::classify(&EdgeSet::from_ids(graph, ids.iter())?))
            .collect::<Result<Vec<_>>>()?;
        parts.push((base, directions));
    }
    let sys = crate::gliding::even_cycle_system(graph);
    CubeComplex::from_parts(&sys, vertices, parts)
}

pub fn verdict_to_json(v: &CurvatureVerdict) -> Value {
    json!({
        "regular": v.regular,
        "cube_condition": v.cube_condition,
        "npc": v.npc,
    })
}

/// DOT export of a directed 1-skeleton: nodes are 0-cells labeled by their
/// edge sets, arrows carry the glide cycle.
pub fn dot_directed(d: &DirectedComplex) -> String {
    let x = d.complex();
    let mut out = String::from("digraph glide_complex {\n");
    for (i, v) in x.vertices().iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, v.id_string()));
    }
    for (from, to, cycle) in d.arrows() {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            from,
            to,
            cycle.id()
        ));
    }
    out.push_str("}\n");
    out
}

pub fn word_to_json(w: &Word, generators: &[String]) -> Value {
    Value::Array(
        w.letters()
            .iter()
            .map(|l| {
                json!({
                    "gen": generators[l.gen],
                    "exp": l.exp,
                })
            })
            .collect(),
    )
}

pub fn word_to_text(w: &Word, generators: &[String]) -> String {
    if w.is_empty() {
        return "1".to_owned();
    }
    w.letters()
        .iter()
        .map(|l| {
            if l.exp > 0 {
                generators[l.gen].clone()
            } else {
                format!("{}^-1", generators[l.gen])
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(|r| word_to_json(r, &p.generators)).collect::<Vec<_>>(),
    })
}

/// Plain-text presentation: `gens: ...; rels: ...`.
pub fn presentation_to_text(p: &Presentation) -> String {
    format!(
        "gens: {}; rels: {}",
        if p.generators.is_empty() {
            "(none)".to_owned()
        } else {
            p.generators.join(", ")
        },
        if p.relators.is_empty() {
            "(none)".to_owned()
        } else {
            p.relators
                .iter()
                .map(|r| word_to_text(r, &p.generators))
                .collect::<Vec<_>>()
                .join(", ")
        }
    )
}
