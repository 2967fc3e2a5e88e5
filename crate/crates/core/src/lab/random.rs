//! Seeded random graphs, vertex functions and point clouds for experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Edge, MetricMeasureGraph, PointCloud};

/// Random spanning tree plus `extra` random edges. With `weighted`, lengths
/// and measures are drawn from `[0.5, 2]` and weights take the default rule;
/// otherwise everything is 1.
pub fn connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize, weighted: bool) -> MetricMeasureGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for k in 1..n {
        pairs.push((order[rng.gen_range(0..k)], order[k]));
    }
    if n >= 2 {
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && !pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) {
                pairs.push((a, b));
            }
        }
    }
    let measure: Vec<f64> = (0..n).map(|_| if weighted { rng.gen_range(0.5..2.0) } else { 1.0 }).collect();
    let edges: Vec<Edge> = pairs
        .into_iter()
        .map(|(u, v)| {
            let length = if weighted { rng.gen_range(0.5..2.0) } else { 1.0 };
            Edge {
                u,
                v,
                length,
                weight: length * (measure[u] + measure[v]) / 2.0,
            }
        })
        .collect();
    MetricMeasureGraph::new(measure, edges, vec![]).expect("spanning tree keeps the graph connected")
}

/// Values drawn from a small set of levels so that ties occur.
pub fn vertex_function<R: Rng>(rng: &mut R, n: usize, levels: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0..levels.max(1)) as f64 / levels.max(1) as f64).collect()
}

/// Uniform random subset, nonempty when `n > 0`.
pub fn subset<R: Rng>(rng: &mut R, n: usize, probability: f64) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(probability)).collect();
    if s.is_empty() && n > 0 {
        s.push(rng.gen_range(0..n));
    }
    s
}

/// Uniform points in `[0, side]^2` with masses in `[0.5, 2]`.
pub fn planar_cloud<R: Rng>(rng: &mut R, count: usize, side: f64) -> PointCloud {
    let points = (0..count).map(|_| vec![rng.gen_range(0.0..side), rng.gen_range(0.0..side)]).collect();
    let measure = (0..count).map(|_| rng.gen_range(0.5..2.0)).collect();
    PointCloud::euclidean(points, Some(measure)).expect("finite planar points")
}
