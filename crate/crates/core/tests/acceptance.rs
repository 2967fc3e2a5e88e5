//! One line per acceptance criterion, `criterion N: PASS|FAIL (details)`.
//! Run with `cargo test -p geolie --test acceptance -- --nocapture --test-threads 1`.

use std::time::{Duration, Instant};

use geolie::classify::{
    classify_conformal_type, qc_implies_qi_verdict, DeclaredFixture, Dim, Group, GroupSpec, VerdictCase,
};
use geolie::lab::random::{connected_graph, planar_cloud, subset, vertex_function};
use geolie::lab::{
    annulus_capacity_bound, ball_mass_profile, build_net, ferrand_hyperbolic, ferrand_hyperbolic_table,
    fit_growth_exponent, is_monotone, p_capacity, quasi_straight_defect, straighten, Capacitor, FerrandMode,
    MetricMeasureGraph, PointCloud,
};
use geolie::lie::fixtures::{engel, heisenberg};
use geolie::lie::random::{random_nilpotent, random_polarization};
use geolie::lie::rational::unit;
use geolie::lie::{LieAlgebra, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::brute_force_capacity;

fn verdict(id: &str, pass: bool, detail: String) {
    println!("criterion {id}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {detail}");
}

fn span(n: usize, idx: &[usize]) -> Subspace {
    Subspace::span(n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>()).unwrap()
}

fn dims(alg: LieAlgebra, delta: Subspace, lattice_rank: usize) -> (u64, Dim, bool) {
    let r = classify_conformal_type(&GroupSpec::new(alg, delta, lattice_rank).unwrap()).unwrap();
    (r.hausdorff_dim_q, r.growth_dim_n, r.carnot)
}

fn relative_error(value: f64, expected: f64) -> f64 {
    (value - expected).abs() / expected.abs()
}

#[test]
fn criterion_1_dimension_formulas() {
    let start = Instant::now();
    let mut cases = Vec::new();
    for n in 1..=3 {
        cases.push((format!("R^{n}"), dims(LieAlgebra::abelian(n), Subspace::full(n), 0), (n as u64, n as u64)));
    }
    cases.push(("Heisenberg sR".into(), dims(heisenberg(), span(3, &[0, 1]), 0), (4, 4)));
    cases.push(("Heisenberg Riemannian".into(), dims(heisenberg(), Subspace::full(3), 0), (3, 4)));
    cases.push(("Engel {X1,X2}".into(), dims(engel(), span(4, &[0, 1]), 0), (7, 7)));
    cases.push(("Engel {X1,X2,X4}".into(), dims(engel(), span(4, &[0, 1, 3]), 0), (5, 7)));
    let elapsed = start.elapsed();
    let wrong: Vec<String> = cases
        .iter()
        .filter(|(_, (q, n, _), (eq, en))| (*q, *n) != (*eq, Dim::Finite(*en)))
        .map(|(name, (q, n, _), _)| format!("{name}: Q={q} N={n}"))
        .collect();
    verdict(
        "1",
        wrong.is_empty() && elapsed < Duration::from_secs(1),
        format!("{} fixtures, {} mismatches {wrong:?}, {:.3}s", cases.len(), wrong.len(), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_carnot_dichotomy() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut exceptions = 0;
    let mut carnot = 0;
    for k in 0..200 {
        let alg = random_nilpotent(&mut rng, 3 + k % 5);
        let delta = random_polarization(&mut rng, &alg);
        let (q, n, is_carnot) = dims(alg, delta, 0);
        let Dim::Finite(n) = n else {
            exceptions += 1;
            continue;
        };
        carnot += usize::from(is_carnot);
        if q > n || (q == n) != is_carnot {
            exceptions += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "2",
        exceptions == 0 && elapsed < Duration::from_secs(30),
        format!("200 algebras, {carnot} Carnot, {exceptions} exceptions, {:.1}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_3_verdict_table() {
    let heis = Group::Spec(GroupSpec::new(heisenberg(), span(3, &[0, 1]), 0).unwrap());
    let roto = Group::Declared(DeclaredFixture::rototranslation());
    let circle = Group::Spec(GroupSpec::riemannian(LieAlgebra::abelian(3)).with_lattice_rank(1).unwrap());
    let r3 = Group::Spec(GroupSpec::riemannian(LieAlgebra::abelian(3)));
    let rows = [
        ("Heisenberg sR vs rototranslation", &heis, &roto, VerdictCase::Obstructed),
        ("R^3/Z vs itself", &circle, &circle, VerdictCase::QiForcedInfinitePi1),
        ("R^3 vs R^3", &r3, &r3, VerdictCase::LiminalCarnotRigidity),
    ];
    let mut bad = Vec::new();
    for (name, a, b, expected) in rows {
        let got = qc_implies_qi_verdict(a, b).unwrap().case;
        if got != expected {
            bad.push(format!("{name}: {got:?}"));
        }
    }
    verdict("3", bad.is_empty(), format!("3 rows, mismatches {bad:?}"));
}

fn parallel_paths(n: usize) -> MetricMeasureGraph {
    // Vertex 0 and 1 are the plates; each path has n - 1 interior vertices.
    let mut pairs = Vec::new();
    let mut next = 2;
    for _ in 0..2 {
        let mut prev = 0;
        for _ in 1..n {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
        pairs.push((prev, 1));
    }
    MetricMeasureGraph::unweighted(next, &pairs, vec![]).unwrap()
}

#[test]
fn criterion_4_capacity_closed_forms() {
    let mut worst_path = 0.0_f64;
    for n in [2usize, 5, 10, 50] {
        let g = MetricMeasureGraph::path(n);
        for p in [1.0, 1.5, 2.0, 4.0] {
            let value = p_capacity(&g, &Capacitor::new(vec![0], vec![n]), p).unwrap().value;
            worst_path = worst_path.max(relative_error(value, (n as f64).powf(1.0 - p)));
        }
    }
    let mut worst_parallel = 0.0_f64;
    for n in [2usize, 5, 10, 50] {
        let value = p_capacity(&parallel_paths(n), &Capacitor::new(vec![0], vec![1]), 2.0).unwrap().value;
        worst_parallel = worst_parallel.max(relative_error(value, 2.0 / n as f64));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_oracle = 0.0_f64;
    let mut instances = 0;
    for trial in 0..60 {
        let n = rng.gen_range(3..=6);
        let extra = rng.gen_range(0..=n);
        let g = connected_graph(&mut rng, n, extra, trial % 2 == 1);
        let f: Vec<usize> = if n == 6 { vec![4, 5] } else { vec![n - 1] };
        for p in [1.0, 1.5, 2.0, 4.0] {
            let value = p_capacity(&g, &Capacitor::new(vec![0], f.clone()), p).unwrap().value;
            let oracle = brute_force_capacity(&g, &[0], &f, p);
            worst_oracle = worst_oracle.max((value - oracle).abs() / oracle.max(1.0));
            instances += 1;
        }
    }
    verdict(
        "4",
        worst_path <= 1e-6 && worst_parallel <= 1e-6 && worst_oracle <= 1e-4,
        format!(
            "paths max rel err {worst_path:.2e}, parallel {worst_parallel:.2e}, brute force {worst_oracle:.2e} over {instances} instances"
        ),
    );
}

#[test]
fn criterion_5_coarea_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    for trial in 0..1000 {
        let n = rng.gen_range(2..=50);
        let extra = rng.gen_range(0..=n);
        let g = connected_graph(&mut rng, n, extra, true);
        let u: Vec<f64> = if trial % 2 == 0 {
            (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect()
        } else {
            vertex_function(&mut rng, n, 5)
        };
        worst = worst.max(g.coarea_residual(&u));
    }
    verdict("5", worst <= 1e-12, format!("1000 pairs, max residual {worst:.2e}"));
}

#[test]
fn criterion_6_straightening() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut not_monotone, mut moved_boundary, mut energy_up) = (0, 0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(3..=30);
        let (extra, weighted, levels) = (rng.gen_range(0..n), rng.gen_bool(0.5), rng.gen_range(2..8));
        let g = connected_graph(&mut rng, n, extra, weighted);
        let u = vertex_function(&mut rng, n, levels);
        let domain = subset(&mut rng, n, 0.6);
        let s = straighten(&g, &u, &domain);
        not_monotone += usize::from(!is_monotone(&g, &s, &domain));
        moved_boundary += usize::from((0..n).any(|x| !domain.contains(&x) && s[x] != u[x]));
        for p in [1.0, 2.0, 4.0] {
            energy_up += usize::from(g.p_energy(&s, p) > g.p_energy(&u, p) * (1.0 + 1e-12));
        }
    }
    verdict(
        "6",
        not_monotone + moved_boundary + energy_up == 0,
        format!("500 trials: {not_monotone} non-monotone, {moved_boundary} boundary changes, {energy_up} energy increases"),
    );
}

/// Grid centred at the origin, with the plate `|x| <= inner` and every vertex
/// at Euclidean distance `>= outer` on the other side.
fn annulus_capacity(inner: f64, outer: f64) -> f64 {
    let half = outer.ceil() as i64 + 1;
    let side = (2 * half + 1) as usize;
    let g = MetricMeasureGraph::grid(side);
    let radius = |k: usize| {
        let (i, j) = ((k / side) as i64 - half, (k % side) as i64 - half);
        ((i * i + j * j) as f64).sqrt()
    };
    let plate: Vec<usize> = (0..side * side).filter(|&k| radius(k) <= inner).collect();
    let far: Vec<usize> = (0..side * side).filter(|&k| radius(k) >= outer).collect();
    p_capacity(&g, &Capacitor::new(plate, far), 2.0).unwrap().value
}

/// Smallest `C` with `#{|x| <= r} <= C r^2` for integer radii up to `max_r`.
fn fitted_growth_constant(max_r: usize) -> f64 {
    (1..=max_r)
        .map(|r| {
            let r2 = (r * r) as i64;
            let count = (-(r as i64)..=r as i64)
                .flat_map(|i| (-(r as i64)..=r as i64).map(move |j| i * i + j * j))
                .filter(|&d| d <= r2)
                .count();
            count as f64 / r2 as f64
        })
        .fold(0.0, f64::max)
}

#[test]
fn criterion_7_annulus_decay() {
    let inner = 2.0;
    let logs = [1.0, 1.5, 2.0, 2.5, 3.0];
    let outers: Vec<f64> = logs.iter().map(|l: &f64| inner * l.exp()).collect();
    let c = fitted_growth_constant(outers.last().unwrap().ceil() as usize);
    let mut rows = Vec::new();
    let mut ok = true;
    let mut previous = f64::INFINITY;
    for (&log, &outer) in logs.iter().zip(&outers) {
        let value = annulus_capacity(inner, outer);
        let bound = annulus_capacity_bound(c, 2.0, 2.0, inner, outer).unwrap();
        ok &= value <= bound && value < previous;
        previous = value;
        rows.push(format!("L={log}: {value:.4} <= {bound:.4}"));
    }
    verdict("7", ok, format!("C={c:.3}, {}", rows.join(", ")));
}

#[test]
fn criterion_8_quasi_straight_sequences() {
    let line: Vec<i64> = (-100..=100).collect();
    let snow = quasi_straight_defect(&line, |a, b| ((a - b).abs() as f64).sqrt()).unwrap();
    let standard = quasi_straight_defect(&line, |a, b| (a - b).abs() as f64).unwrap();
    let mut windows = Vec::new();
    let mut rejected_by_flag = true;
    for doubling in 0..=5 {
        let len = 8usize << doubling;
        let seq: Vec<f64> = (0..len).map(|k| (k % 2) as f64).collect();
        let r = quasi_straight_defect(&seq, |a, b| (a - b).abs()).unwrap();
        rejected_by_flag &= !r.unbounded_both_sides;
        windows.push(r.k);
    }
    let strictly_increasing = windows.windows(2).all(|w| w[1] > w[0]);
    verdict(
        "8",
        snow.k_align <= 1.0 && standard.k == 0.0 && strictly_increasing && rejected_by_flag,
        format!(
            "snowflake K_align {:.4}, standard K {}, alternating per-window K {windows:?} (strictly increasing: {strictly_increasing}), unbounded flag cleared on all windows: {rejected_by_flag}",
            snow.k_align, standard.k
        ),
    );
}

/// Independent enumeration: every vertex subset, connectivity by component count.
fn ferrand_oracle(g: &MetricMeasureGraph, x: usize, y: usize, q: f64) -> f64 {
    let n = g.vertex_count();
    let mut best = f64::INFINITY;
    for mask in 1u32..1 << n {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if !set.contains(&x) || !set.contains(&y) || g.components(&g.mask(&set)).len() != 1 {
            continue;
        }
        let value = p_capacity(g, &Capacitor::at_infinity(set), q).unwrap().value;
        if value < best {
            best = value;
        }
    }
    best
}

#[test]
fn criterion_9_ferrand_pseudo_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut graphs, mut triangle_violations, mut oracle_mismatches, mut checked_pairs) = (0, 0, 0, 0);
    while graphs < 60 {
        let n = rng.gen_range(3..=8);
        let extra = rng.gen_range(0..=n);
        let weighted = rng.gen_bool(0.5);
        let boundary = subset(&mut rng, n, 0.3);
        let g = connected_graph(&mut rng, n, extra, weighted).with_infinity_boundary(boundary).unwrap();
        let q = if graphs % 2 == 0 { 2.0 } else { 3.0 };
        let table = ferrand_hyperbolic_table(&g, q).unwrap();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[a][c] > table[a][b] + table[b][c] + 1e-9 {
                        triangle_violations += 1;
                    }
                }
            }
        }
        for _ in 0..3 {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let exact = ferrand_hyperbolic(&g, x, y, q, FerrandMode::Exact).unwrap().value;
            let oracle = ferrand_oracle(&g, x, y, q);
            if exact.to_bits() != oracle.to_bits() || table[x][y].to_bits() != oracle.to_bits() {
                oracle_mismatches += 1;
            }
            checked_pairs += 1;
        }
        graphs += 1;
    }
    verdict(
        "9",
        triangle_violations == 0 && oracle_mismatches == 0,
        format!(
            "{graphs} graphs, {triangle_violations} triangle violations, {oracle_mismatches}/{checked_pairs} oracle mismatches"
        ),
    );
}

#[test]
fn criterion_10_kanai_net() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut separated, mut covering, mut bounded) = (0, 0, 0);
    for _ in 0..20 {
        let count = rng.gen_range(100..=2000);
        let side = (count as f64 / 4.0).sqrt();
        let eps = rng.gen_range(0.8..1.5);
        let cloud = planar_cloud(&mut rng, count, side);
        let net = build_net(&cloud, eps).unwrap();
        let c = &net.centers;
        separated += usize::from(c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| cloud.distance(a, b) >= eps)));
        covering += usize::from((0..cloud.len()).all(|x| c.iter().any(|&a| cloud.distance(a, x) < eps)));
        let order = cloud.order_bound(eps);
        bounded += usize::from((0..c.len()).all(|v| net.graph.degree(v) as f64 <= order));
    }
    let points: Vec<Vec<f64>> = (0..10_000).map(|k| vec![(k / 100) as f64, (k % 100) as f64]).collect();
    let grid = PointCloud::euclidean(points, None).unwrap();
    let mut exponents = Vec::new();
    for eps in [2.0, 3.0] {
        let net = build_net(&grid, eps).unwrap();
        let centre = (0..net.centers.len())
            .min_by(|&a, &b| {
                let d = |v: usize| grid.points().unwrap()[net.centers[v]].iter().map(|x| (x - 49.5).abs()).sum::<f64>();
                d(a).total_cmp(&d(b))
            })
            .unwrap();
        let radii: Vec<f64> = (0..8).map(|k| 4.0 * eps * (40.0 / (4.0 * eps)).powf(k as f64 / 7.0)).collect();
        let masses = ball_mass_profile(&net.graph, centre, &radii);
        exponents.push(fit_growth_exponent(&radii, &masses));
    }
    let growth_ok = exponents.iter().all(|e| (e - 2.0).abs() <= 0.2);
    verdict(
        "10",
        separated == 20 && covering == 20 && bounded == 20 && growth_ok,
        format!("20 clouds: {separated} separated, {covering} covering, {bounded} within the order bound; grid growth exponents {exponents:.3?}"),
    );
}
