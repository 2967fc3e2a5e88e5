use serde::Serialize;

use super::{LabError, MetricMeasureGraph};

pub const EXACT_PROFILE_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileValue {
    /// `f64::INFINITY` when no set is admissible.
    #[serde(serialize_with = "crate::report::extended_float")]
    pub value: f64,
    /// True for heuristic values, which only bound the profile from above.
    pub upper_bound_only: bool,
    pub witness: Vec<usize>,
}

/// Smallest external boundary `#∂S` over vertex sets with `v <= #S <= n/2`.
///
/// The cap at half the vertices keeps the profile meaningful on a finite
/// graph, where the whole vertex set has empty boundary.
pub fn isoperimetric_profile(g: &MetricMeasureGraph, v: f64, mode: ProfileMode) -> Result<ProfileValue, LabError> {
    if !(v > 0.0) {
        return Err(LabError::BadParameter(format!("volume must be positive, got {v}")));
    }
    let n = g.vertex_count();
    let lo = v.ceil() as usize;
    let hi = n / 2;
    if lo > hi {
        return Ok(ProfileValue {
            value: f64::INFINITY,
            upper_bound_only: false,
            witness: Vec::new(),
        });
    }
    match mode {
        ProfileMode::Exact => exact(g, lo, hi),
        ProfileMode::Heuristic => Ok(heuristic(g, lo, hi)),
    }
}

fn exact(g: &MetricMeasureGraph, lo: usize, hi: usize) -> Result<ProfileValue, LabError> {
    let n = g.vertex_count();
    if n > EXACT_PROFILE_LIMIT {
        return Err(LabError::TooLargeForExact {
            n,
            limit: EXACT_PROFILE_LIMIT,
        });
    }
    let neighbors: Vec<u32> = (0..n).map(|x| g.neighbors(x).fold(0, |m, y| m | 1 << y)).collect();
    // reach[s] = union of neighborhoods of the vertices in s
    let mut reach = vec![0u32; 1 << n];
    let mut best: Option<(u32, u32)> = None;
    for s in 1u32..(1 << n) {
        let low = s.trailing_zeros() as usize;
        reach[s as usize] = reach[(s & (s - 1)) as usize] | neighbors[low];
        let size = s.count_ones() as usize;
        if size < lo || size > hi {
            continue;
        }
        let boundary = (reach[s as usize] & !s).count_ones();
        if best.is_none_or(|(b, _)| boundary < b) {
            best = Some((boundary, s));
        }
    }
    let (boundary, set) = best.expect("lo <= hi admits a set");
    Ok(ProfileValue {
        value: f64::from(boundary),
        upper_bound_only: false,
        witness: (0..n).filter(|&i| set >> i & 1 == 1).collect(),
    })
}

/// Best prefix of two growth orders from every start vertex: breadth-first
/// balls, and greedy growth adding the outside vertex that keeps the boundary smallest.
fn heuristic(g: &MetricMeasureGraph, lo: usize, hi: usize) -> ProfileValue {
    let n = g.vertex_count();
    let mut best = (usize::MAX, Vec::new());
    let consider = |order: &[usize], best: &mut (usize, Vec<usize>)| {
        let mut inside = vec![false; n];
        let mut boundary = vec![false; n];
        let mut count = 0usize;
        for (k, &x) in order.iter().enumerate() {
            inside[x] = true;
            if boundary[x] {
                boundary[x] = false;
                count -= 1;
            }
            for y in g.neighbors(x) {
                if !inside[y] && !boundary[y] {
                    boundary[y] = true;
                    count += 1;
                }
            }
            let size = k + 1;
            if size > hi {
                break;
            }
            if size >= lo && count < best.0 {
                let mut witness = order[..size].to_vec();
                witness.sort_unstable();
                *best = (count, witness);
            }
        }
    };
    for start in 0..n {
        let dist = g.distances_from(&[start]);
        let mut ball: Vec<usize> = (0..n).collect();
        ball.sort_by(|a, b| dist[*a].total_cmp(&dist[*b]).then(a.cmp(b)));
        consider(&ball, &mut best);
        consider(&greedy_order(g, start, hi), &mut best);
    }
    ProfileValue {
        value: best.0 as f64,
        upper_bound_only: true,
        witness: best.1,
    }
}

fn greedy_order(g: &MetricMeasureGraph, start: usize, limit: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    inside[start] = true;
    let mut order = vec![start];
    while order.len() < limit {
        // The boundary changes by (new outside neighbors of y) - 1 when y joins.
        let candidate = (0..n)
            .filter(|&y| !inside[y] && g.neighbors(y).any(|z| inside[z]))
            .min_by_key(|&y| {
                let fresh = g
                    .neighbors(y)
                    .filter(|&z| !inside[z] && !g.neighbors(z).any(|w| inside[w]))
                    .count();
                (fresh, y)
            });
        let Some(y) = candidate else { break };
        inside[y] = true;
        order.push(y);
    }
    order
}
