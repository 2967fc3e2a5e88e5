use geolie::lab::random::{connected_graph, planar_cloud, subset, vertex_function};
use geolie::lab::{
    annulus_capacity_bound, build_net, capacity_upper_teichmuller, ferrand_hyperbolic, ferrand_parabolic,
    is_monotone, isoperimetric_profile, p_capacity, straighten, straighten_with_order, Capacitor, FerrandMode,
    MetricMeasureGraph, ProfileMode, ValueOrder,
};
use proptest::prelude::*;

mod common;
use common::brute_force_capacity;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cap(g: &MetricMeasureGraph, e: &[usize], f: &[usize], p: f64) -> f64 {
    p_capacity(g, &Capacitor::new(e.to_vec(), f.to_vec()), p).unwrap().value
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn disjoint_plates(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    use rand::seq::SliceRandom;
    order.shuffle(rng);
    let e_len = rng.gen_range(1..=(n / 3).max(1));
    let f_len = rng.gen_range(1..=(n / 3).max(1));
    (order[..e_len].to_vec(), order[e_len..e_len + f_len].to_vec())
}

fn exponent(rng: &mut ChaCha8Rng) -> f64 {
    [1.0, 1.5, 2.0, 3.0][rng.gen_range(0..4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn capacity_is_monotone_in_the_plate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(6..=30);
        let g = connected_graph(&mut rng, n, n / 2, true);
        let (e, f) = disjoint_plates(&mut rng, n);
        let p = exponent(&mut rng);
        let mut bigger = e.clone();
        bigger.extend((0..n).filter(|x| !f.contains(x) && !e.contains(x) && rng.gen_bool(0.3)));
        prop_assert!(cap(&g, &e, &f, p) <= cap(&g, &bigger, &f, p) + 1e-9);
    }

    #[test]
    fn capacity_is_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(4..=30);
        let g = connected_graph(&mut rng, n, n / 2, true);
        let (e, f) = disjoint_plates(&mut rng, n);
        let p = exponent(&mut rng);
        let (a, b) = (cap(&g, &e, &f, p), cap(&g, &f, &e, p));
        prop_assert!(close(a, b, 1e-9), "{} vs {}", a, b);
    }

    #[test]
    fn capacity_at_infinity_is_subadditive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(6..=30);
        let (plates, boundary) = disjoint_plates(&mut rng, n);
        let g = connected_graph(&mut rng, n, n / 2, true).with_infinity_boundary(boundary).unwrap();
        prop_assume!(plates.len() >= 2);
        let split = rng.gen_range(1..plates.len());
        let (e1, e2) = plates.split_at(split);
        let p = exponent(&mut rng);
        let at_inf = |e: &[usize]| p_capacity(&g, &Capacitor::at_infinity(e.to_vec()), p).unwrap().value;
        prop_assert!(at_inf(&plates) <= at_inf(e1) + at_inf(e2) + 1e-9);
    }

    #[test]
    fn teichmuller_potential_dominates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = connected_graph(&mut rng, 20, 12, true);
        let (e, f) = disjoint_plates(&mut rng, 20);
        let p = exponent(&mut rng);
        let upper = capacity_upper_teichmuller(&g, &e, &f, p).unwrap();
        prop_assert!(cap(&g, &e, &f, p) <= upper * (1.0 + 1e-12));
    }

    #[test]
    fn coarea_is_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = connected_graph(&mut rng, 40, 30, true);
        let u: Vec<f64> = (0..40).map(|_| rng.gen_range(-3.0..3.0)).collect();
        prop_assert!(g.coarea_residual(&u) <= 1e-12);
        prop_assert!(g.coarea_residual(&vertex_function(&mut rng, 40, 4)) <= 1e-12);
    }

    #[test]
    fn heuristic_profile_is_an_upper_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=14);
        let extra = rng.gen_range(0..n);
        let g = connected_graph(&mut rng, n, extra, false);
        for v in 1..=n / 2 {
            let exact = isoperimetric_profile(&g, v as f64, ProfileMode::Exact).unwrap();
            let heuristic = isoperimetric_profile(&g, v as f64, ProfileMode::Heuristic).unwrap();
            prop_assert!(heuristic.value >= exact.value);
            prop_assert!(heuristic.upper_bound_only && !exact.upper_bound_only);
        }
    }
}

#[test]
fn solver_matches_brute_force_on_small_free_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..40 {
        let n = rng.gen_range(3..=6);
        let extra = rng.gen_range(0..=n);
        let g = connected_graph(&mut rng, n, extra, trial % 2 == 0);
        let e = vec![0];
        let f: Vec<usize> = if n > 5 { vec![n - 2, n - 1] } else { vec![n - 1] };
        for p in [1.0, 1.5, 2.0, 3.0] {
            let solved = cap(&g, &e, &f, p);
            let oracle = brute_force_capacity(&g, &e, &f, p);
            assert!(close(solved, oracle, 1e-4), "trial {trial}, p {p}: solver {solved}, oracle {oracle}");
        }
    }
}

#[test]
fn straightening_is_monotone_and_energy_decreasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut order_mismatches = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=25);
        let (extra, weighted, levels) = (rng.gen_range(0..n), rng.gen_bool(0.5), rng.gen_range(2..6));
        let g = connected_graph(&mut rng, n, extra, weighted);
        let u = vertex_function(&mut rng, n, levels);
        let domain = subset(&mut rng, n, 0.6);
        let s = straighten(&g, &u, &domain);
        assert!(is_monotone(&g, &s, &domain));
        for x in (0..n).filter(|x| !domain.contains(x)) {
            assert_eq!(s[x], u[x]);
        }
        for p in [1.0, 2.0, 4.0] {
            assert!(g.p_energy(&s, p) <= g.p_energy(&u, p) * (1.0 + 1e-12) + 1e-15);
        }
        let reverse = straighten_with_order(&g, &u, &domain, ValueOrder::Decreasing);
        assert!(is_monotone(&g, &reverse, &domain));
        if reverse != s {
            order_mismatches += 1;
        }
    }
    println!("straightening order mismatches: {order_mismatches}/200");
}

#[test]
fn parabolic_gauge_grows_with_separation() {
    for len in [10usize, 20, 30] {
        let g = MetricMeasureGraph::path(len).with_infinity_boundary(vec![0, len]).unwrap();
        let mut previous = 0.0;
        for gap in 1..len / 2 {
            let x = len / 2 - gap / 2;
            let v = ferrand_parabolic(&g, x, x + gap, 2.0, FerrandMode::Heuristic).unwrap().value;
            assert!(v > previous, "len {len} gap {gap}: {v} <= {previous}");
            previous = v;
        }
    }
    let g = MetricMeasureGraph::path(6).with_infinity_boundary(vec![0, 6]).unwrap();
    assert_eq!(ferrand_parabolic(&g, 3, 3, 2.0, FerrandMode::Exact).unwrap().value, 0.0);
    for (x, y) in [(1, 4), (2, 3), (1, 5)] {
        let exact = ferrand_parabolic(&g, x, y, 2.0, FerrandMode::Exact).unwrap().value;
        let heuristic = ferrand_parabolic(&g, x, y, 2.0, FerrandMode::Heuristic).unwrap().value;
        assert!(heuristic <= exact + 1e-12);
    }
}

#[test]
fn path_upper_gauge_bounds_the_exact_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let n = rng.gen_range(4..=9);
        let (_, boundary) = disjoint_plates(&mut rng, n);
        let g = connected_graph(&mut rng, n, 3, true).with_infinity_boundary(boundary).unwrap();
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let exact = ferrand_hyperbolic(&g, x, y, 3.0, FerrandMode::Exact).unwrap().value;
        let upper = ferrand_hyperbolic(&g, x, y, 3.0, FerrandMode::Heuristic).unwrap().value;
        assert!(upper >= exact);
    }
}

#[test]
fn small_nets_respect_the_order_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let cloud = planar_cloud(&mut rng, 300, 10.0);
        let net = build_net(&cloud, 1.5).unwrap();
        assert!((net.max_degree + 1) as f64 <= cloud.order_bound(1.5));
        let total: f64 = net.graph.measure().iter().sum();
        assert!((total - cloud.measure().iter().sum::<f64>()).abs() < 1e-9);
    }
}

/// Growth forces parabolicity: on grids with the rim at infinity the capacity
/// of a fixed centre ball keeps falling as the grid grows.
#[test]
fn grid_capacity_decays_with_size() {
    for p in [2.0, 3.0] {
        let mut previous = f64::INFINITY;
        for side in [11usize, 21, 41, 81] {
            if p > 2.0 && side > 41 {
                continue;
            }
            let g = MetricMeasureGraph::grid(side);
            let rim: Vec<usize> =
                (0..side * side).filter(|k| [0, side - 1].contains(&(k / side)) || [0, side - 1].contains(&(k % side))).collect();
            let g = g.with_infinity_boundary(rim).unwrap();
            let c = side / 2;
            let ball: Vec<usize> = (0..side * side)
                .filter(|k| (k / side).abs_diff(c) + (k % side).abs_diff(c) <= 1)
                .collect();
            let value = p_capacity(&g, &Capacitor::at_infinity(ball), p).unwrap().value;
            assert!(value < previous, "p {p} side {side}: {value} >= {previous}");
            let bound = annulus_capacity_bound(5.0, 2.0, p, 1.0, c as f64).unwrap();
            assert!(value <= bound, "p {p} side {side}: {value} above {bound}");
            previous = value;
        }
    }
}

/// Flattening order changes the fixpoint: both results are monotone but differ.
#[test]
fn straightening_order_matters_on_a_five_cycle() {
    let g = MetricMeasureGraph::unweighted(5, &[(0, 4), (4, 2), (0, 3), (2, 1), (3, 1)], vec![]).unwrap();
    let (a, b) = (2.0 / 3.0, 1.0 / 3.0);
    let u = [a, a, 0.0, 0.0, b];
    let domain = [1, 2, 3, 4];
    let up = straighten(&g, &u, &domain);
    let down = straighten_with_order(&g, &u, &domain, ValueOrder::Decreasing);
    assert_eq!(up, vec![a, 0.0, 0.0, 0.0, b]);
    assert_eq!(down, vec![a, b, b, 0.0, b]);
    assert!(is_monotone(&g, &up, &domain) && is_monotone(&g, &down, &domain));
}
