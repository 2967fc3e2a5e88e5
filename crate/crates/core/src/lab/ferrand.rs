//! Capacity gauges built from connected vertex sets.
//!
//! The hyperbolic gauge minimizes `Cap_Q(K; infinity)` over connected sets
//! `K` through both points. The parabolic gauge minimizes `Cap_Q(E; F)` over
//! disjoint connected sets `E ∋ x`, `F ∋ y` that each reach the infinity
//! boundary, and reports `1 / P^(1/Q)`.

use serde::Serialize;

use super::{p_capacity, Capacitor, LabError, MetricMeasureGraph};

pub const EXACT_FERRAND_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FerrandMode {
    Exact,
    /// Restricts the search to a family of candidate sets.
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact,
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FerrandValue {
    #[serde(serialize_with = "crate::report::extended_float")]
    pub value: f64,
    pub bound: Bound,
    /// Minimizing set(s): `[K]` for the hyperbolic gauge, `[E, F]` for the parabolic one.
    pub witness: Vec<Vec<usize>>,
}

fn check(g: &MetricMeasureGraph, points: &[usize], q: f64) -> Result<(), LabError> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(LabError::BadExponent(format!("Q > 1, got {q}")));
    }
    if g.infinity_boundary().is_empty() {
        return Err(LabError::NoInfinityBoundary);
    }
    if points.iter().any(|&x| x >= g.vertex_count()) {
        return Err(LabError::BadParameter("vertex index out of range".into()));
    }
    Ok(())
}

fn exact_size(g: &MetricMeasureGraph) -> Result<(), LabError> {
    let n = g.vertex_count();
    if n > EXACT_FERRAND_LIMIT {
        return Err(LabError::TooLargeForExact {
            n,
            limit: EXACT_FERRAND_LIMIT,
        });
    }
    Ok(())
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn is_connected_mask(g: &MetricMeasureGraph, mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in g.neighbors(x) {
            let bit = 1u32 << y;
            if mask & bit != 0 && seen & bit == 0 {
                seen |= bit;
                stack.push(y);
            }
        }
    }
    seen == mask
}

/// All connected vertex sets containing `required`, as bitmasks in increasing order.
pub fn connected_subsets(g: &MetricMeasureGraph, required: &[usize]) -> Result<Vec<u32>, LabError> {
    exact_size(g)?;
    let need = required.iter().fold(0u32, |m, &x| m | 1 << x);
    Ok((1u32..(1 << g.vertex_count()))
        .filter(|&m| m & need == need && is_connected_mask(g, m))
        .collect())
}

fn capacity_at_infinity(g: &MetricMeasureGraph, set: Vec<usize>, q: f64) -> Result<f64, LabError> {
    Ok(p_capacity(g, &Capacitor::at_infinity(set), q)?.value)
}

pub fn ferrand_hyperbolic(g: &MetricMeasureGraph, x: usize, y: usize, q: f64, mode: FerrandMode) -> Result<FerrandValue, LabError> {
    check(g, &[x, y], q)?;
    let candidates = match mode {
        FerrandMode::Exact => {
            let n = g.vertex_count();
            connected_subsets(g, &[x, y])?.into_iter().map(|m| members(m, n)).collect()
        }
        FerrandMode::Heuristic => path_candidates(g, x, y),
    };
    let mut best = (f64::INFINITY, Vec::new());
    for k in candidates {
        let value = capacity_at_infinity(g, k.clone(), q)?;
        if value < best.0 {
            best = (value, k);
        }
    }
    Ok(FerrandValue {
        value: best.0,
        bound: if mode == FerrandMode::Exact { Bound::Exact } else { Bound::Upper },
        witness: vec![best.1],
    })
}

/// All-pairs exact hyperbolic gauge from a single enumeration of connected sets.
pub fn ferrand_hyperbolic_table(g: &MetricMeasureGraph, q: f64) -> Result<Vec<Vec<f64>>, LabError> {
    check(g, &[], q)?;
    let n = g.vertex_count();
    let mut table = vec![vec![f64::INFINITY; n]; n];
    for mask in connected_subsets(g, &[])? {
        let set = members(mask, n);
        let value = capacity_at_infinity(g, set.clone(), q)?;
        for &a in &set {
            for &b in &set {
                if value < table[a][b] {
                    table[a][b] = value;
                }
            }
        }
    }
    Ok(table)
}

const BEAM_WIDTH: usize = 8;

fn trace(parent: &[Option<usize>], mut x: usize) -> Vec<usize> {
    let mut path = vec![x];
    while let Some(p) = parent[x] {
        path.push(p);
        x = p;
    }
    path
}

/// The shortest `x`-`y` path plus the shortest paths forced through each of
/// the `BEAM_WIDTH` best detour vertices.
fn path_candidates(g: &MetricMeasureGraph, x: usize, y: usize) -> Vec<Vec<usize>> {
    let all = vec![true; g.vertex_count()];
    let (dx, px) = g.shortest_path_tree(x, &all);
    let (dy, py) = g.shortest_path_tree(y, &all);
    let mut vias: Vec<usize> = (0..g.vertex_count()).collect();
    vias.sort_by(|&a, &b| (dx[a] + dy[a]).total_cmp(&(dx[b] + dy[b])).then(a.cmp(&b)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut push = |mut k: Vec<usize>| {
        k.sort_unstable();
        k.dedup();
        if !out.contains(&k) {
            out.push(k);
        }
    };
    push(trace(&px, y));
    for &z in vias.iter().take(BEAM_WIDTH) {
        let mut k = trace(&px, z);
        k.extend(trace(&py, z));
        push(k);
    }
    out
}

pub fn ferrand_parabolic(g: &MetricMeasureGraph, x: usize, y: usize, q: f64, mode: FerrandMode) -> Result<FerrandValue, LabError> {
    check(g, &[x, y], q)?;
    let (pairs, bound) = match mode {
        FerrandMode::Exact => (exact_pairs(g, x, y)?, Bound::Exact),
        FerrandMode::Heuristic => (ray_pairs(g, x, y), Bound::Lower),
    };
    let mut best = (f64::INFINITY, Vec::new());
    for (e, f) in pairs {
        let value = p_capacity(g, &Capacitor::new(e.clone(), f.clone()), q)?.value;
        if value < best.0 {
            best = (value, vec![e, f]);
        }
    }
    // An infinite (or absent) infimum gives distance 0.
    let value = if best.0.is_finite() { best.0.powf(-1.0 / q) } else { 0.0 };
    Ok(FerrandValue {
        value,
        bound,
        witness: best.1,
    })
}

/// Inclusion-minimal connected sets through `x` that meet the boundary.
/// Capacity is monotone in each plate, so minimal plates suffice.
fn minimal_continua(g: &MetricMeasureGraph, x: usize) -> Result<Vec<u32>, LabError> {
    let boundary = g.infinity_boundary().iter().fold(0u32, |m, &b| m | 1 << b);
    let sets: Vec<u32> = connected_subsets(g, &[x])?
        .into_iter()
        .filter(|m| m & boundary != 0)
        .collect();
    Ok(sets
        .iter()
        .copied()
        .filter(|&m| !sets.iter().any(|&s| s != m && s & m == s))
        .collect())
}

fn exact_pairs(g: &MetricMeasureGraph, x: usize, y: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>, LabError> {
    exact_size(g)?;
    if x == y {
        return Ok(Vec::new());
    }
    let n = g.vertex_count();
    let from_x = minimal_continua(g, x)?;
    let from_y = minimal_continua(g, y)?;
    let mut pairs = Vec::new();
    for &e in &from_x {
        for &f in &from_y {
            if e & f == 0 {
                pairs.push((members(e, n), members(f, n)));
            }
        }
    }
    Ok(pairs)
}

/// Shortest paths from `x` to each boundary vertex, paired with shortest
/// paths from `y` to the boundary avoiding them, in both orders.
fn ray_pairs(g: &MetricMeasureGraph, x: usize, y: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    if x == y {
        return Vec::new();
    }
    let n = g.vertex_count();
    let mut pairs = Vec::new();
    for (first, second, swap) in [(x, y, false), (y, x, true)] {
        let all = vec![true; n];
        let (d1, p1) = g.shortest_path_tree(first, &all);
        for &b in g.infinity_boundary() {
            if d1[b].is_infinite() {
                continue;
            }
            let ray = trace(&p1, b);
            if ray.contains(&second) {
                continue;
            }
            let mut allowed = vec![true; n];
            for &v in &ray {
                allowed[v] = false;
            }
            let (d2, p2) = g.shortest_path_tree(second, &allowed);
            let Some(target) = g
                .infinity_boundary()
                .iter()
                .copied()
                .filter(|&c| d2[c].is_finite())
                .min_by(|&a, &b| d2[a].total_cmp(&d2[b]).then(a.cmp(&b)))
            else {
                continue;
            };
            let other = trace(&p2, target);
            let (mut e, mut f) = if swap { (other, ray) } else { (ray, other) };
            e.sort_unstable();
            f.sort_unstable();
            if !pairs.contains(&(e.clone(), f.clone())) {
                pairs.push((e, f));
            }
        }
    }
    pairs
}
