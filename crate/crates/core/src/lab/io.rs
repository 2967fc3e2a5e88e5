//! JSON documents for graphs and point clouds.
//!
//! Graph: `{"vertices": n, "edges": [[u, v, length, weight], ...], "measure": [...],
//! "infinity_boundary": [...]}`. A three-element edge takes the default weight;
//! a missing measure means unit masses.
//!
//! Cloud: `{"points": [[x, y, ...], ...]}` or `{"distance_matrix": [[...], ...]}`,
//! with an optional `"measure"`.

use serde::Deserialize;
use serde_json::{json, Value};

use super::{Edge, LabError, MetricMeasureGraph, PointCloud};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: usize,
    edges: Vec<Vec<f64>>,
    #[serde(default)]
    measure: Option<Vec<f64>>,
    #[serde(default)]
    infinity_boundary: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CloudDoc {
    #[serde(default)]
    points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    distance_matrix: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    measure: Option<Vec<f64>>,
}

fn index(x: f64, what: &str) -> Result<usize, LabError> {
    if x >= 0.0 && x.fract() == 0.0 && x < usize::MAX as f64 {
        Ok(x as usize)
    } else {
        Err(LabError::Malformed(format!("{what} must be a vertex index, got {x}")))
    }
}

pub fn graph_from_value(value: Value) -> Result<MetricMeasureGraph, LabError> {
    let doc: GraphDoc = serde_json::from_value(value).map_err(|e| LabError::Malformed(e.to_string()))?;
    let measure = doc.measure.unwrap_or_else(|| vec![1.0; doc.vertices]);
    if measure.len() != doc.vertices {
        return Err(LabError::Malformed(format!(
            "measure has {} entries for {} vertices",
            measure.len(),
            doc.vertices
        )));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for row in &doc.edges {
        let (u, v) = match row.as_slice() {
            [u, v, _] | [u, v, _, _] => (index(*u, "edge endpoint")?, index(*v, "edge endpoint")?),
            _ => return Err(LabError::Malformed("edges are [u, v, length] or [u, v, length, weight]".into())),
        };
        let length = row[2];
        let weight = match row.get(3) {
            Some(&w) => w,
            None => {
                let mu = |i: usize| measure.get(i).copied().unwrap_or(f64::NAN);
                length * (mu(u) + mu(v)) / 2.0
            }
        };
        edges.push(Edge { u, v, length, weight });
    }
    MetricMeasureGraph::new(measure, edges, doc.infinity_boundary)
}

pub fn parse_graph(text: &str) -> Result<MetricMeasureGraph, LabError> {
    graph_from_value(serde_json::from_str(text).map_err(|e| LabError::Malformed(e.to_string()))?)
}

pub fn graph_to_value(g: &MetricMeasureGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().map(|e| json!([e.u, e.v, e.length, e.weight])).collect::<Vec<_>>(),
        "measure": g.measure(),
        "infinity_boundary": g.infinity_boundary(),
    })
}

pub fn cloud_from_value(value: Value) -> Result<PointCloud, LabError> {
    let doc: CloudDoc = serde_json::from_value(value).map_err(|e| LabError::Malformed(e.to_string()))?;
    match (doc.points, doc.distance_matrix) {
        (Some(points), None) => PointCloud::euclidean(points, doc.measure),
        (None, Some(matrix)) => PointCloud::from_distance_matrix(matrix, doc.measure),
        _ => Err(LabError::Malformed("give exactly one of points or distance_matrix".into())),
    }
}

pub fn parse_cloud(text: &str) -> Result<PointCloud, LabError> {
    cloud_from_value(serde_json::from_str(text).map_err(|e| LabError::Malformed(e.to_string()))?)
}

pub fn cloud_to_value(cloud: &PointCloud) -> Value {
    let mut doc = json!({ "measure": cloud.measure() });
    match (cloud.points(), cloud.distance_matrix()) {
        (Some(p), _) => doc["points"] = json!(p),
        (_, Some(m)) => doc["distance_matrix"] = json!(m),
        _ => unreachable!("a cloud has one metric representation"),
    }
    doc
}
