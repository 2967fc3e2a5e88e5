use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Edge, LabError, MetricMeasureGraph};

#[derive(Debug, Clone, PartialEq)]
enum Metric {
    Euclidean(Vec<Vec<f64>>),
    Matrix(Vec<Vec<f64>>),
}

/// Finite metric space with a positive mass on each point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    metric: Metric,
    measure: Vec<f64>,
}

const METRIC_TOLERANCE: f64 = 1e-9;
const SPOT_CHECKS: usize = 256;

impl PointCloud {
    pub fn euclidean(points: Vec<Vec<f64>>, measure: Option<Vec<f64>>) -> Result<Self, LabError> {
        if let Some(first) = points.first() {
            if points.iter().any(|p| p.len() != first.len() || p.iter().any(|x| !x.is_finite())) {
                return Err(LabError::InvalidMetric("points need equal finite coordinates".into()));
            }
        }
        Self::build(Metric::Euclidean(points), measure)
    }

    pub fn from_distance_matrix(matrix: Vec<Vec<f64>>, measure: Option<Vec<f64>>) -> Result<Self, LabError> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(LabError::InvalidMetric("distance matrix must be square".into()));
        }
        Self::build(Metric::Matrix(matrix), measure)
    }

    fn build(metric: Metric, measure: Option<Vec<f64>>) -> Result<Self, LabError> {
        let n = match &metric {
            Metric::Euclidean(p) => p.len(),
            Metric::Matrix(m) => m.len(),
        };
        if n == 0 {
            return Err(LabError::EmptyCloud);
        }
        let measure = measure.unwrap_or_else(|| vec![1.0; n]);
        if measure.len() != n || measure.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
            return Err(LabError::BadParameter("measure needs one positive mass per point".into()));
        }
        let cloud = Self { metric, measure };
        cloud.spot_check()?;
        Ok(cloud)
    }

    /// Checks the metric axioms on seeded random triples.
    fn spot_check(&self) -> Result<(), LabError> {
        let n = self.len();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e6574);
        for _ in 0..SPOT_CHECKS {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let (ab, ba, bc, ac) = (self.distance(a, b), self.distance(b, a), self.distance(b, c), self.distance(a, c));
            let scale = 1.0 + ab.abs() + bc.abs() + ac.abs();
            let tol = METRIC_TOLERANCE * scale;
            if !ab.is_finite() || ab < 0.0 {
                return Err(LabError::InvalidMetric(format!("d({a},{b}) = {ab}")));
            }
            if self.distance(a, a).abs() > tol {
                return Err(LabError::InvalidMetric(format!("d({a},{a}) is not zero")));
            }
            if a != b && ab <= 0.0 {
                return Err(LabError::InvalidMetric(format!("distinct points {a}, {b} at distance 0")));
            }
            if (ab - ba).abs() > tol {
                return Err(LabError::InvalidMetric(format!("d({a},{b}) != d({b},{a})")));
            }
            if ac > ab + bc + tol {
                return Err(LabError::InvalidMetric(format!("triangle inequality fails on ({a},{b},{c})")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.measure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measure.is_empty()
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        match &self.metric {
            Metric::Euclidean(p) => p[a].iter().zip(&p[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
            Metric::Matrix(m) => m[a][b],
        }
    }

    pub fn points(&self) -> Option<&[Vec<f64>]> {
        match &self.metric {
            Metric::Euclidean(p) => Some(p),
            Metric::Matrix(_) => None,
        }
    }

    pub fn distance_matrix(&self) -> Option<&[Vec<f64>]> {
        match &self.metric {
            Metric::Matrix(m) => Some(m),
            Metric::Euclidean(_) => None,
        }
    }

    /// Mass of the open ball `B(x, r)`.
    pub fn ball_mass(&self, x: usize, r: f64) -> f64 {
        (0..self.len()).filter(|&y| self.distance(x, y) < r).map(|y| self.measure[y]).sum()
    }

    /// `max_x mu(B(x, 4 eps)) / min_x mu(B(x, eps / 2))`, bounding `1 + degree` in the net.
    pub fn order_bound(&self, eps: f64) -> f64 {
        let (mut big, mut small) = (0.0_f64, f64::INFINITY);
        for x in 0..self.len() {
            big = big.max(self.ball_mass(x, 4.0 * eps));
            small = small.min(self.ball_mass(x, eps / 2.0));
        }
        big / small
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetReport {
    #[serde(skip)]
    pub graph: MetricMeasureGraph,
    /// Cloud index of each net vertex.
    pub centers: Vec<usize>,
    /// Net vertex each cloud point's mass went to.
    pub assignment: Vec<usize>,
    pub max_degree: usize,
}

/// Greedy maximal `eps`-separated subset in index order, joined at distance
/// `<= 3 eps`; each cloud point's mass goes to its nearest center, ties to the lower index.
pub fn build_net(cloud: &PointCloud, eps: f64) -> Result<NetReport, LabError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(LabError::BadParameter(format!("epsilon must be positive, got {eps}")));
    }
    if cloud.is_empty() {
        return Err(LabError::EmptyCloud);
    }
    let mut centers: Vec<usize> = Vec::new();
    for x in 0..cloud.len() {
        if centers.iter().all(|&c| cloud.distance(c, x) >= eps) {
            centers.push(x);
        }
    }
    let mut measure = vec![0.0; centers.len()];
    let assignment: Vec<usize> = (0..cloud.len())
        .map(|x| {
            let mut best = (f64::INFINITY, 0);
            for (k, &c) in centers.iter().enumerate() {
                let d = cloud.distance(c, x);
                if d < best.0 {
                    best = (d, k);
                }
            }
            measure[best.1] += cloud.measure()[x];
            best.1
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            let d = cloud.distance(centers[a], centers[b]);
            if d <= 3.0 * eps {
                edges.push(Edge {
                    u: a,
                    v: b,
                    length: d,
                    weight: d * (measure[a] + measure[b]) / 2.0,
                });
            }
        }
    }
    let graph = MetricMeasureGraph::new(measure, edges, vec![]).map_err(|e| match e {
        LabError::Disconnected => LabError::DisconnectedNet,
        other => other,
    })?;
    let max_degree = (0..graph.vertex_count()).map(|x| graph.degree(x)).max().unwrap_or(0);
    Ok(NetReport {
        graph,
        centers,
        assignment,
        max_degree,
    })
}

/// Net measure within graph distance `r` of `center`, for each radius.
pub fn ball_mass_profile(g: &MetricMeasureGraph, center: usize, radii: &[f64]) -> Vec<f64> {
    let dist = g.distances_from(&[center]);
    radii
        .iter()
        .map(|&r| dist.iter().zip(g.measure()).filter(|(d, _)| **d <= r).map(|(_, m)| m).sum())
        .collect()
}

/// Least-squares slope of `ln mass` against `ln r`.
pub fn fit_growth_exponent(radii: &[f64], masses: &[f64]) -> f64 {
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = masses.iter().map(|m| m.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
