use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LabError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
    pub weight: f64,
}

impl Edge {
    /// Conductance `w / len`, the coefficient of `|u(x) - u(y)|` in total variation.
    pub fn conductance(&self) -> f64 {
        self.weight / self.length
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Finite connected graph with positive edge lengths, edge weights and vertex
/// measure. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMeasureGraph {
    edges: Vec<Edge>,
    measure: Vec<f64>,
    infinity_boundary: Vec<usize>,
    // (neighbor, edge index)
    adjacency: Vec<Vec<(usize, usize)>>,
}

fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

impl MetricMeasureGraph {
    pub fn new(
        measure: Vec<f64>,
        edges: Vec<Edge>,
        infinity_boundary: Vec<usize>,
    ) -> Result<Self, LabError> {
        let n = measure.len();
        if n == 0 {
            return Err(LabError::InvalidGraph("no vertices".into()));
        }
        if let Some(i) = measure.iter().position(|&m| !positive(m)) {
            return Err(LabError::InvalidGraph(format!("measure of vertex {i} is not positive")));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(LabError::InvalidGraph(format!("edge {k} has an endpoint out of range")));
            }
            if e.u == e.v {
                return Err(LabError::InvalidGraph(format!("edge {k} is a loop")));
            }
            if !positive(e.length) || !positive(e.weight) {
                return Err(LabError::InvalidGraph(format!(
                    "edge {k} needs positive finite length and weight"
                )));
            }
            adjacency[e.u].push((e.v, k));
            adjacency[e.v].push((e.u, k));
        }
        let mut infinity_boundary = infinity_boundary;
        infinity_boundary.sort_unstable();
        infinity_boundary.dedup();
        if infinity_boundary.last().is_some_and(|&b| b >= n) {
            return Err(LabError::InvalidGraph("infinity boundary vertex out of range".into()));
        }
        let g = Self {
            edges,
            measure,
            infinity_boundary,
            adjacency,
        };
        if g.components(&vec![true; n]).len() != 1 {
            return Err(LabError::Disconnected);
        }
        Ok(g)
    }

    /// Builds edges from `(u, v, length)` with the default weight
    /// `len * (mu(u) + mu(v)) / 2`.
    pub fn with_default_weights(
        measure: Vec<f64>,
        edges: &[(usize, usize, f64)],
        infinity_boundary: Vec<usize>,
    ) -> Result<Self, LabError> {
        let edges = edges
            .iter()
            .map(|&(u, v, length)| {
                let mu = |i: usize| measure.get(i).copied().unwrap_or(f64::NAN);
                Edge {
                    u,
                    v,
                    length,
                    weight: length * (mu(u) + mu(v)) / 2.0,
                }
            })
            .collect();
        Self::new(measure, edges, infinity_boundary)
    }

    /// Unit-length, unit-measure graph on `n` vertices (so unit weights).
    pub fn unweighted(n: usize, pairs: &[(usize, usize)], infinity_boundary: Vec<usize>) -> Result<Self, LabError> {
        let edges: Vec<_> = pairs.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::with_default_weights(vec![1.0; n], &edges, infinity_boundary)
    }

    pub fn path(edges: usize) -> Self {
        let pairs: Vec<_> = (0..edges).map(|i| (i, i + 1)).collect();
        Self::unweighted(edges + 1, &pairs, vec![]).expect("path is connected")
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unweighted(n, &pairs, vec![]).expect("cycle is connected")
    }

    /// Star with `leaves` leaves around vertex 0.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::unweighted(leaves + 1, &pairs, vec![]).expect("star is connected")
    }

    /// `side x side` grid; vertex `(i, j)` has index `i * side + j`.
    pub fn grid(side: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..side {
            for j in 0..side {
                let x = i * side + j;
                if j + 1 < side {
                    pairs.push((x, x + 1));
                }
                if i + 1 < side {
                    pairs.push((x, x + side));
                }
            }
        }
        Self::unweighted(side * side, &pairs, vec![]).expect("grid is connected")
    }

    /// Same graph with a different infinity boundary.
    pub fn with_infinity_boundary(&self, boundary: Vec<usize>) -> Result<Self, LabError> {
        Self::new(self.measure.clone(), self.edges.clone(), boundary)
    }

    pub fn vertex_count(&self) -> usize {
        self.measure.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn total_measure(&self) -> f64 {
        self.measure.iter().sum()
    }

    pub fn infinity_boundary(&self) -> &[usize] {
        &self.infinity_boundary
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[x].iter().map(|&(y, _)| y)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.vertex_count()];
        for &x in set {
            m[x] = true;
        }
        m
    }

    /// Connected components of the subgraph induced on `mask`, each sorted.
    pub fn components(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if !mask[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if mask[y] && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        !set.is_empty() && self.components(&self.mask(set)).len() == 1
    }

    /// Weighted shortest-path distance (by edge length) to the nearest source.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<f64> {
        self.distances_within(sources, None)
    }

    /// Shortest-path distances using only vertices allowed by `allowed`.
    pub fn distances_within(&self, sources: &[usize], allowed: Option<&[bool]>) -> Vec<f64> {
        let n = self.vertex_count();
        let ok = |x: usize| allowed.is_none_or(|a| a[x]);
        let mut dist = vec![f64::INFINITY; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            if ok(s) && dist[s] > 0.0 {
                dist[s] = 0.0;
                heap.push(Nearest(0.0, s));
            }
        }
        while let Some(Nearest(d, x)) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            for &(y, k) in &self.adjacency[x] {
                let nd = d + self.edges[k].length;
                if ok(y) && nd < dist[y] {
                    dist[y] = nd;
                    heap.push(Nearest(nd, y));
                }
            }
        }
        dist
    }

    /// Shortest-path predecessor tree from `source`, restricted to `allowed`.
    pub(crate) fn shortest_path_tree(&self, source: usize, allowed: &[bool]) -> (Vec<f64>, Vec<Option<usize>>) {
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![None; n];
        let mut heap = BinaryHeap::new();
        if allowed[source] {
            dist[source] = 0.0;
            heap.push(Nearest(0.0, source));
        }
        while let Some(Nearest(d, x)) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            for &(y, k) in &self.adjacency[x] {
                let nd = d + self.edges[k].length;
                // Ties go to the lower-index parent for determinism.
                let better = nd < dist[y] || (nd == dist[y] && parent[y].is_some_and(|p| x < p));
                if allowed[y] && better {
                    dist[y] = nd;
                    parent[y] = Some(x);
                    heap.push(Nearest(nd, y));
                }
            }
        }
        (dist, parent)
    }

    pub fn distance(&self, x: usize, y: usize) -> f64 {
        self.distances_from(&[x])[y]
    }

    pub fn p_energy(&self, u: &[f64], p: f64) -> f64 {
        self.edges
            .iter()
            .map(|e| e.weight * ((u[e.u] - u[e.v]).abs() / e.length).powf(p))
            .sum()
    }

    pub fn total_variation(&self, u: &[f64]) -> f64 {
        self.edges
            .iter()
            .map(|e| e.conductance() * (u[e.u] - u[e.v]).abs())
            .sum()
    }

    /// Sum of `w / len` over edges with exactly one endpoint in `set`.
    pub fn perimeter(&self, set: &[usize]) -> f64 {
        self.perimeter_mask(&self.mask(set))
    }

    pub fn perimeter_mask(&self, mask: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|e| mask[e.u] != mask[e.v])
            .map(Edge::conductance)
            .sum()
    }

    /// `|sum_i Per({u > t_i}) (t_{i+1} - t_i) - TV(u)|` over the sorted
    /// distinct values `t_i`, evaluated in exact rational arithmetic on the
    /// binary values of the inputs.
    pub fn coarea_residual(&self, u: &[f64]) -> f64 {
        let exact = |x: f64| BigRational::from_float(x).expect("finite input");
        let values: Vec<BigRational> = u.iter().map(|&x| exact(x)).collect();
        let conductance: Vec<BigRational> = self
            .edges
            .iter()
            .map(|e| exact(e.weight) / exact(e.length))
            .collect();
        let mut levels = values.clone();
        levels.sort();
        levels.dedup();
        let mut layered = BigRational::zero();
        for w in levels.windows(2) {
            let per: BigRational = self
                .edges
                .iter()
                .zip(&conductance)
                .filter(|(e, _)| (values[e.u] > w[0]) != (values[e.v] > w[0]))
                .map(|(_, c)| c.clone())
                .sum();
            layered += per * (&w[1] - &w[0]);
        }
        let tv: BigRational = self
            .edges
            .iter()
            .zip(&conductance)
            .map(|(e, c)| c * (&values[e.u] - &values[e.v]).abs())
            .sum();
        crate::lie::rational::to_f64(&(layered - tv).abs())
    }

    /// External vertex boundary: vertices outside `set` adjacent to it.
    pub fn graph_boundary(&self, set: &[usize]) -> Vec<usize> {
        let inside = self.mask(set);
        let mut out = vec![false; self.vertex_count()];
        for &x in set {
            for y in self.neighbors(x) {
                if !inside[y] {
                    out[y] = true;
                }
            }
        }
        (0..self.vertex_count()).filter(|&i| out[i]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Nearest(f64, usize);

impl Eq for Nearest {}

impl Ord for Nearest {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Nearest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
