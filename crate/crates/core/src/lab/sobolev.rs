use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{LabError, MetricMeasureGraph};

/// Empirical constants for
/// `(sum mu |u|^s)^(1/s) <= C_q (sum_e w_e |grad u|^q)^(1/q) + C_inf ||u||_inf`
/// with `s = N q / (N - q)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SobolevProbe {
    pub exponent_s: f64,
    pub c_q: f64,
    pub c_inf: f64,
    /// False when neither candidate for `C_inf` accommodates every sample.
    pub feasible: bool,
    /// Samples that no finite `C_q` could accommodate at the chosen `C_inf`.
    pub violations: usize,
    pub samples: usize,
}

struct Sample {
    lhs: f64,
    gradient: f64,
    sup: f64,
}

fn random_function(g: &MetricMeasureGraph, rng: &mut ChaCha8Rng, kind: usize) -> Vec<f64> {
    let n = g.vertex_count();
    match kind % 4 {
        0 => vec![rng.gen_range(-1.0..1.0); n],
        1 => (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        2 => {
            let dist = g.distances_from(&[rng.gen_range(0..n)]);
            let radius = rng.gen_range(0.0..dist.iter().cloned().fold(0.0, f64::max) + 1.0);
            dist.iter().map(|&d| f64::from(u8::from(d <= radius))).collect()
        }
        _ => {
            let dist = g.distances_from(&[rng.gen_range(0..n)]);
            let radius = rng.gen_range(1.0..dist.iter().cloned().fold(1.0, f64::max) + 1.0);
            dist.iter().map(|&d| (1.0 - d / radius).max(0.0)).collect()
        }
    }
}

/// Tries `C_inf = 0` first, then `C_inf = mu(X)^(1/s)`, the smallest value
/// that covers constant functions.
pub fn sobolev_constant_probe(
    g: &MetricMeasureGraph,
    dimension: f64,
    q: f64,
    samples: usize,
    seed: u64,
) -> Result<SobolevProbe, LabError> {
    if !(dimension > 1.0 && dimension.is_finite()) {
        return Err(LabError::BadParameter(format!("N must exceed 1, got {dimension}")));
    }
    if !(q >= 1.0 && q < dimension) {
        return Err(LabError::BadParameter(format!("q must lie in [1, N), got {q}")));
    }
    let s = dimension * q / (dimension - q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Sample> = (0..samples)
        .map(|k| {
            let u = random_function(g, &mut rng, k);
            Sample {
                lhs: u
                    .iter()
                    .zip(g.measure())
                    .map(|(x, m)| m * x.abs().powf(s))
                    .sum::<f64>()
                    .powf(1.0 / s),
                gradient: g.p_energy(&u, q).powf(1.0 / q),
                sup: u.iter().fold(0.0, |m, x| m.max(x.abs())),
            }
        })
        .collect();
    let evaluate = |c_inf: f64| {
        let mut c_q = 0.0_f64;
        let mut violations = 0;
        for d in &data {
            let excess = d.lhs - c_inf * d.sup;
            if d.gradient > 0.0 {
                c_q = c_q.max(excess / d.gradient);
            } else if excess > 1e-12 * d.lhs.max(1.0) {
                violations += 1;
            }
        }
        (c_q, violations)
    };
    let candidates = [0.0, g.total_measure().powf(1.0 / s)];
    let mut chosen = None;
    for &c_inf in &candidates {
        let (c_q, violations) = evaluate(c_inf);
        if violations == 0 {
            chosen = Some((c_inf, c_q, 0, true));
            break;
        }
        chosen = Some((c_inf, c_q, violations, false));
    }
    let (c_inf, c_q, violations, feasible) = chosen.expect("two candidates");
    Ok(SobolevProbe {
        exponent_s: s,
        c_q,
        c_inf,
        feasible,
        violations,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_need_the_sup_term() {
        let g = MetricMeasureGraph::path(9);
        let r = sobolev_constant_probe(&g, 2.0, 1.0, 40, 7).unwrap();
        assert!(r.feasible);
        assert_eq!(r.exponent_s, 2.0);
        assert!((r.c_inf - 10f64.sqrt()).abs() < 1e-12);
        assert!(r.c_q.is_finite());
    }

    #[test]
    fn half_path_indicator_by_hand() {
        // u = 1 on 5 of 10 unit vertices: lhs = 5^(1/2), gradient term 1.
        let g = MetricMeasureGraph::path(9);
        let u: Vec<f64> = (0..10).map(|i| f64::from(u8::from(i < 5))).collect();
        let lhs = u.iter().map(|x: &f64| x.powi(2)).sum::<f64>().sqrt();
        assert!((lhs - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(g.p_energy(&u, 1.0), 1.0);
    }

    #[test]
    fn rejects_bad_exponents() {
        let g = MetricMeasureGraph::path(3);
        assert!(sobolev_constant_probe(&g, 2.0, 2.0, 5, 0).is_err());
        assert!(sobolev_constant_probe(&g, 1.0, 1.0, 5, 0).is_err());
    }
}
