use serde::Serialize;

use super::flow::FlowNetwork;
use super::{LabError, MetricMeasureGraph};

/// Second plate of a capacitor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Set(Vec<usize>),
    /// The graph's infinity boundary.
    AtInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capacitor {
    pub e: Vec<usize>,
    pub f: Target,
}

impl Capacitor {
    pub fn new(e: Vec<usize>, f: Vec<usize>) -> Self {
        Self { e, f: Target::Set(f) }
    }

    pub fn at_infinity(e: Vec<usize>) -> Self {
        Self { e, f: Target::AtInfinity }
    }

    /// Resolves `F` and checks indices; returns `(E, F)` as sorted vertex lists.
    pub fn resolve(&self, g: &MetricMeasureGraph) -> Result<(Vec<usize>, Vec<usize>), LabError> {
        let n = g.vertex_count();
        let f = match &self.f {
            Target::Set(f) => f.clone(),
            Target::AtInfinity if g.infinity_boundary().is_empty() => return Err(LabError::NoInfinityBoundary),
            Target::AtInfinity => g.infinity_boundary().to_vec(),
        };
        let mut e = self.e.clone();
        let mut f = f;
        for set in [&mut e, &mut f] {
            set.sort_unstable();
            set.dedup();
            if set.last().is_some_and(|&x| x >= n) {
                return Err(LabError::InvalidCapacitor("vertex index out of range".into()));
            }
        }
        if e.is_empty() {
            return Err(LabError::InvalidCapacitor("E is empty".into()));
        }
        Ok((e, f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Target relative Newton decrement, an estimate of `(E - E_min) / E`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityResult {
    /// `f64::INFINITY` when the plates overlap.
    #[serde(serialize_with = "crate::report::extended_float")]
    pub value: f64,
    pub potential: Vec<f64>,
    pub p: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Distance-quotient potential `d_E / (d_E + d_F)`: 0 on `E`, 1 on `F`.
pub fn teichmuller_potential(g: &MetricMeasureGraph, e: &[usize], f: &[usize]) -> Vec<f64> {
    let de = g.distances_from(e);
    let df = g.distances_from(f);
    de.iter().zip(&df).map(|(a, b)| a / (a + b)).collect()
}

/// Energy of the distance-quotient potential, an upper bound for `Cap_p(E; F)`.
pub fn capacity_upper_teichmuller(g: &MetricMeasureGraph, e: &[usize], f: &[usize], p: f64) -> Result<f64, LabError> {
    check_exponent(p)?;
    let (e, f) = Capacitor::new(e.to_vec(), f.to_vec()).resolve(g)?;
    if f.is_empty() {
        return Err(LabError::InvalidCapacitor("F is empty".into()));
    }
    if e.iter().any(|x| f.binary_search(x).is_ok()) {
        return Err(LabError::OverlappingSets);
    }
    Ok(g.p_energy(&teichmuller_potential(g, &e, &f), p))
}

fn check_exponent(p: f64) -> Result<(), LabError> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(LabError::BadExponent(format!("1 <= p < inf, got {p}")))
    }
}

pub fn p_capacity(g: &MetricMeasureGraph, cap: &Capacitor, p: f64) -> Result<CapacityResult, LabError> {
    p_capacity_with(g, cap, p, &SolverOptions::default())
}

/// Minimizes `sum_e w_e (|u(x) - u(y)| / len_e)^p` over `u = 1` on `E`, `u = 0` on `F`.
pub fn p_capacity_with(
    g: &MetricMeasureGraph,
    cap: &Capacitor,
    p: f64,
    options: &SolverOptions,
) -> Result<CapacityResult, LabError> {
    check_exponent(p)?;
    let (e, f) = cap.resolve(g)?;
    let n = g.vertex_count();
    let done = |value: f64, potential: Vec<f64>| CapacityResult {
        value,
        potential,
        p,
        iterations: 0,
        residual: 0.0,
    };
    let in_e = g.mask(&e);
    if f.iter().any(|&x| in_e[x]) {
        return Ok(done(f64::INFINITY, in_e.iter().map(|&b| f64::from(u8::from(b))).collect()));
    }
    if f.is_empty() {
        return Ok(done(0.0, vec![1.0; n]));
    }
    if p == 1.0 {
        return Ok(min_cut(g, &e, &f));
    }
    Newton::new(g, &e, &f, p).solve(options)
}

fn min_cut(g: &MetricMeasureGraph, e: &[usize], f: &[usize]) -> CapacityResult {
    let n = g.vertex_count();
    let (source, sink) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for edge in g.edges() {
        net.add_undirected(edge.u, edge.v, edge.conductance());
    }
    for &x in e {
        net.add_directed(source, x, f64::INFINITY);
    }
    for &x in f {
        net.add_directed(x, sink, f64::INFINITY);
    }
    let scale = g.edges().iter().map(|e| e.conductance()).fold(0.0, f64::max);
    let (flow, side) = net.max_flow(source, sink, scale * 1e-15);
    let potential: Vec<f64> = side[..n].iter().map(|&s| if s { 1.0 } else { 0.0 }).collect();
    let value = g.p_energy(&potential, 1.0);
    CapacityResult {
        value,
        potential,
        p: 1.0,
        iterations: 0,
        residual: (value - flow).abs(),
    }
}

/// Damped Newton on the free vertices with a Jacobi-preconditioned conjugate
/// gradient inner solve. For `p < 2` the edge term `|d|^p` is smoothed to
/// `(d^2 + eta^2)^(p/2)` and `eta` is driven down by continuation.
struct Newton<'a> {
    g: &'a MetricMeasureGraph,
    p: f64,
    u: Vec<f64>,
    // position among free vertices, or None for fixed vertices
    slot: Vec<Option<usize>>,
    free: Vec<usize>,
    // w_e / len_e^p
    coef: Vec<f64>,
    iterations: usize,
}

const FINAL_ETA: f64 = 1e-12;
const STAGE_TOLERANCE: f64 = 1e-6;

fn edge_terms(d: f64, p: f64, eta: f64) -> (f64, f64, f64) {
    if eta == 0.0 {
        let a = d.abs();
        (a.powf(p), p * a.powf(p - 1.0) * d.signum(), p * (p - 1.0) * a.powf(p - 2.0))
    } else {
        let s = d * d + eta * eta;
        (
            s.powf(p / 2.0),
            p * d * s.powf(p / 2.0 - 1.0),
            p * s.powf(p / 2.0 - 2.0) * ((p - 1.0) * d * d + eta * eta),
        )
    }
}

impl<'a> Newton<'a> {
    fn new(g: &'a MetricMeasureGraph, e: &[usize], f: &[usize], p: f64) -> Self {
        let n = g.vertex_count();
        let mut u: Vec<f64> = teichmuller_potential(g, e, f).iter().map(|t| 1.0 - t).collect();
        let mut fixed = vec![false; n];
        for &x in e {
            fixed[x] = true;
            u[x] = 1.0;
        }
        for &x in f {
            fixed[x] = true;
            u[x] = 0.0;
        }
        let free: Vec<usize> = (0..n).filter(|&x| !fixed[x]).collect();
        let mut slot = vec![None; n];
        for (k, &x) in free.iter().enumerate() {
            slot[x] = Some(k);
        }
        let coef = g.edges().iter().map(|e| e.weight / e.length.powf(p)).collect();
        Self {
            g,
            p,
            u,
            slot,
            free,
            coef,
            iterations: 0,
        }
    }

    fn energy(&self, u: &[f64], eta: f64) -> f64 {
        self.g
            .edges()
            .iter()
            .zip(&self.coef)
            .map(|(e, c)| c * edge_terms(u[e.u] - u[e.v], self.p, eta).0)
            .sum()
    }

    /// Gradient over free vertices and the Hessian edge weights.
    fn derivatives(&self, eta: f64) -> (Vec<f64>, Vec<f64>) {
        let mut grad = vec![0.0; self.free.len()];
        let mut hess = Vec::with_capacity(self.coef.len());
        for (e, c) in self.g.edges().iter().zip(&self.coef) {
            let (_, d1, d2) = edge_terms(self.u[e.u] - self.u[e.v], self.p, eta);
            if let Some(k) = self.slot[e.u] {
                grad[k] += c * d1;
            }
            if let Some(k) = self.slot[e.v] {
                grad[k] -= c * d1;
            }
            hess.push(c * d2);
        }
        (grad, hess)
    }

    fn apply(&self, hess: &[f64], shift: f64, x: &[f64], y: &mut [f64]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = shift * xi;
        }
        for (e, h) in self.g.edges().iter().zip(hess) {
            match (self.slot[e.u], self.slot[e.v]) {
                (Some(a), Some(b)) => {
                    let t = h * (x[a] - x[b]);
                    y[a] += t;
                    y[b] -= t;
                }
                (Some(a), None) => y[a] += h * x[a],
                (None, Some(b)) => y[b] += h * x[b],
                (None, None) => {}
            }
        }
    }

    /// Preconditioned CG for `(H + shift I) x = b`.
    fn solve_linear(&self, hess: &[f64], b: &[f64]) -> Vec<f64> {
        let m = b.len();
        let mut diag = vec![0.0; m];
        for (e, h) in self.g.edges().iter().zip(hess) {
            for end in [e.u, e.v] {
                if let Some(k) = self.slot[end] {
                    diag[k] += h;
                }
            }
        }
        let top = diag.iter().cloned().fold(0.0, f64::max);
        let shift = top * 1e-14 + f64::MIN_POSITIVE;
        let precond: Vec<f64> = diag.iter().map(|d| 1.0 / (d + shift)).collect();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let mut x = vec![0.0; m];
        let mut r = b.to_vec();
        let mut z: Vec<f64> = r.iter().zip(&precond).map(|(a, c)| a * c).collect();
        let mut dir = z.clone();
        let mut rz = dot(&r, &z);
        let stop = 1e-13 * dot(b, b).sqrt();
        let mut hd = vec![0.0; m];
        for _ in 0..(10 * m + 100) {
            if dot(&r, &r).sqrt() <= stop {
                break;
            }
            self.apply(hess, shift, &dir, &mut hd);
            let curvature = dot(&dir, &hd);
            if curvature <= 0.0 {
                break;
            }
            let alpha = rz / curvature;
            for k in 0..m {
                x[k] += alpha * dir[k];
                r[k] -= alpha * hd[k];
            }
            for k in 0..m {
                z[k] = r[k] * precond[k];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for k in 0..m {
                dir[k] = z[k] + beta * dir[k];
            }
        }
        x
    }

    fn trial(&self, direction: &[f64], t: f64) -> Vec<f64> {
        let mut v = self.u.clone();
        for (k, &x) in self.free.iter().enumerate() {
            v[x] = (self.u[x] + t * direction[k]).clamp(0.0, 1.0);
        }
        v
    }

    fn gradient_norm(&self, u: &[f64], eta: f64) -> f64 {
        let mut grad = vec![0.0; self.free.len()];
        for (e, c) in self.g.edges().iter().zip(&self.coef) {
            let d1 = c * edge_terms(u[e.u] - u[e.v], self.p, eta).1;
            if let Some(k) = self.slot[e.u] {
                grad[k] += d1;
            }
            if let Some(k) = self.slot[e.v] {
                grad[k] -= d1;
            }
        }
        grad.iter().fold(0.0, |m, g| m.max(g.abs()))
    }

    /// Backtracking line search along a projected path; returns false if no
    /// step decreases the objective. Once energy differences fall below
    /// rounding, a step is judged by the gradient norm instead.
    fn step(&mut self, direction: &[f64], grad: &[f64], eta: f64) -> bool {
        let slope: f64 = direction.iter().zip(grad).map(|(d, g)| d * g).sum();
        if !(slope < 0.0) {
            return false;
        }
        let current = self.energy(&self.u, eta);
        let rounding = 64.0 * f64::EPSILON * current.abs();
        let residual = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
        let mut t = 1.0;
        for _ in 0..60 {
            let candidate = self.trial(direction, t);
            let value = self.energy(&candidate, eta);
            if value <= current + 1e-4 * t * slope
                || (value <= current + rounding && self.gradient_norm(&candidate, eta) < residual)
            {
                self.u = candidate;
                return true;
            }
            t *= 0.5;
        }
        false
    }

    /// Runs at smoothing `eta` until the relative Newton decrement
    /// `g^T H^-1 g / (2 E)`, an estimate of `(E - E_min) / E`, is at most
    /// `tolerance`; returns that final value.
    fn stage(&mut self, eta: f64, tolerance: f64, cap: usize) -> Result<f64, LabError> {
        loop {
            let (grad, hess) = self.derivatives(eta);
            if grad.iter().all(|g| *g == 0.0) {
                return Ok(0.0);
            }
            let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
            let newton = self.solve_linear(&hess, &rhs);
            let decrement: f64 = newton.iter().zip(&rhs).map(|(d, r)| d * r).sum();
            let residual = decrement.max(0.0) / (2.0 * self.energy(&self.u, eta).max(f64::MIN_POSITIVE));
            if residual <= tolerance {
                return Ok(residual);
            }
            if self.iterations >= cap {
                return Err(LabError::SolverDiverged {
                    iterations: self.iterations,
                    residual,
                });
            }
            self.iterations += 1;
            if self.step(&newton, &grad, eta) {
                continue;
            }
            // Fallback: projected steepest descent, scaled by the Hessian diagonal.
            let mut diag = vec![0.0; grad.len()];
            for (e, h) in self.g.edges().iter().zip(&hess) {
                for end in [e.u, e.v] {
                    if let Some(k) = self.slot[end] {
                        diag[k] += h;
                    }
                }
            }
            let descent: Vec<f64> = rhs
                .iter()
                .zip(&diag)
                .map(|(r, d)| if *d > 0.0 { r / d } else { *r })
                .collect();
            if !self.step(&descent, &grad, eta) {
                return Err(LabError::SolverDiverged {
                    iterations: self.iterations,
                    residual,
                });
            }
        }
    }

    fn solve(mut self, options: &SolverOptions) -> Result<CapacityResult, LabError> {
        let mut residual = 0.0;
        if self.p >= 2.0 {
            residual = self.stage(0.0, options.tolerance, options.max_iterations)?;
        } else {
            let mut eta = 0.1;
            while eta > FINAL_ETA * 1.5 {
                self.stage(eta, STAGE_TOLERANCE.max(options.tolerance), options.max_iterations)?;
                eta /= 10.0;
            }
            if !self.free.is_empty() {
                residual = self.stage(FINAL_ETA, options.tolerance, options.max_iterations)?;
            }
        }
        let value = self.g.p_energy(&self.u, self.p);
        Ok(CapacityResult {
            value,
            potential: self.u,
            p: self.p,
            iterations: self.iterations,
            residual,
        })
    }
}
