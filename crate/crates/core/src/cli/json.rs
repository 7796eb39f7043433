//! JSON renderings of library values. Key order is fixed by `serde_json`'s
//! sorted maps, so equal inputs give byte-identical output.

use serde_json::{json, Map, Value};

use crate::bstree::SubwordTree;
use crate::defect::{Decomposition, PhiMatrix};
use crate::exactalg::LaurentPoly;
use crate::hecke::HeckeElement;
use crate::momentgraph::MomentGraph;
use crate::weyl::GroupElement;

fn coeff_map(p: &LaurentPoly) -> Value {
    let map: Map<String, Value> = p.terms().map(|(e, c)| (e.to_string(), json!(c))).collect();
    Value::Object(map)
}

pub fn laurent(p: &LaurentPoly) -> Value {
    json!({ "display": p.to_string(), "coeffs": coeff_map(p) })
}

pub fn element(x: &GroupElement) -> Value {
    json!(x.to_string())
}

pub fn hecke(h: &HeckeElement) -> Value {
    let terms: Vec<Value> = h.terms().map(|(x, c)| json!({ "word": element(x), "coeff": coeff_map(c) })).collect();
    json!({ "basis": "H", "terms": terms })
}

pub fn decomposition(d: &Decomposition) -> Value {
    Value::Array(d.summands.iter().map(|t| json!({ "z": element(&t.z), "r": t.r, "mult": t.mult })).collect())
}

pub fn phi(phi: &PhiMatrix) -> Value {
    let entries: Vec<Vec<String>> = phi.matrix.entries.iter().map(|row| row.iter().map(|f| f.to_string()).collect()).collect();
    json!({
        "size": phi.size(),
        "stalk_degrees": phi.stalk_degrees,
        "kernel_degrees": phi.kernel_degrees,
        "entries": entries,
    })
}

pub fn tree(t: &SubwordTree, dot: bool) -> Value {
    let vertices: Vec<Value> = t
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| json!({ "id": i, "level": v.level, "ev": element(&v.ev) }))
        .collect();
    let edges: Vec<Value> = t
        .edges
        .iter()
        .map(|e| {
            json!({
                "level": e.level,
                "letter": e.letter,
                "color": e.color,
                "tilt": e.tilt.name(),
                "lower": e.lower,
                "upper": e.upper,
            })
        })
        .collect();
    let paths: Vec<Value> = t
        .maximal_paths()
        .iter()
        .map(|p| {
            let subsequence: Vec<Value> =
                t.subsequence(p).into_iter().map(|s| s.map_or(Value::Null, |s| json!(s))).collect();
            json!({ "subsequence": subsequence, "colors": t.colors(p), "degree": t.path_degree(p) })
        })
        .collect();
    let mut out = json!({
        "word": t.word.to_string(),
        "x": element(&t.x),
        "root": t.root,
        "vertices": vertices,
        "edges": edges,
        "paths": paths,
        "graded_rank": laurent(&t.graded_rank()),
    });
    if dot {
        out["dot"] = json!(t.to_dot());
    }
    out
}

pub fn gkm(graph: &MomentGraph) -> Value {
    let report = graph.gkm_check();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let (a, b) = (&graph.edges()[v.edges.0], &graph.edges()[v.edges.1]);
            json!({
                "vertex": element(&graph.vertices()[v.vertex]),
                "labels": [a.label.to_string(), b.label.to_string()],
            })
        })
        .collect();
    json!({
        "field": graph.field().to_string(),
        "vertices": graph.vertices().len(),
        "edges": graph.edges().len(),
        "passes": report.passes(),
        "violations": violations,
    })
}
