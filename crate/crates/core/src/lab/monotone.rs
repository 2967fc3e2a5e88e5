//! Monotone vertex functions and Mostow-style straightening.
//!
//! A component of a strict super- or sublevel set inside the domain is
//! *enclosed* when none of its vertices has a neighbor outside the domain.
//! A function is monotone on the domain when no level component is enclosed.

use super::MetricMeasureGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrder {
    Increasing,
    Decreasing,
}

fn distinct_values(u: &[f64]) -> Vec<f64> {
    let mut values = u.to_vec();
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}

/// Components of `{u > t} ∩ domain` (above) or `{u < t} ∩ domain` with no
/// neighbor outside the domain.
fn enclosed_components(g: &MetricMeasureGraph, u: &[f64], inside: &[bool], t: f64, above: bool) -> Vec<Vec<usize>> {
    let level: Vec<bool> = (0..u.len())
        .map(|x| inside[x] && if above { u[x] > t } else { u[x] < t })
        .collect();
    g.components(&level)
        .into_iter()
        .filter(|c| c.iter().all(|&x| g.neighbors(x).all(|y| inside[y])))
        .collect()
}

pub fn is_monotone(g: &MetricMeasureGraph, u: &[f64], domain: &[usize]) -> bool {
    let inside = g.mask(domain);
    distinct_values(u).into_iter().all(|t| {
        enclosed_components(g, u, &inside, t, true).is_empty()
            && enclosed_components(g, u, &inside, t, false).is_empty()
    })
}

pub fn straighten(g: &MetricMeasureGraph, u: &[f64], domain: &[usize]) -> Vec<f64> {
    straighten_with_order(g, u, domain, ValueOrder::Increasing)
}

/// Applies `u -> u.a` for the distinct values `a` of `u` in the given order,
/// repeating until nothing changes. `u.a` sets every enclosed component of
/// `{u > a}` and `{u < a}` to `a`.
pub fn straighten_with_order(g: &MetricMeasureGraph, u: &[f64], domain: &[usize], order: ValueOrder) -> Vec<f64> {
    let inside = g.mask(domain);
    let mut u = u.to_vec();
    loop {
        let mut values = distinct_values(&u);
        if order == ValueOrder::Decreasing {
            values.reverse();
        }
        let mut changed = false;
        for a in values {
            for above in [true, false] {
                for component in enclosed_components(g, &u, &inside, a, above) {
                    for x in component {
                        u[x] = a;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_path_is_monotone() {
        let g = MetricMeasureGraph::path(4);
        let u = [0.0, 0.25, 0.5, 0.75, 1.0];
        assert!(is_monotone(&g, &u, &[1, 2, 3]));
        assert_eq!(straighten(&g, &u, &[1, 2, 3]), u.to_vec());
    }

    #[test]
    fn bump_is_flattened() {
        let g = MetricMeasureGraph::path(4);
        let u = [0.0, 0.5, 2.0, 0.5, 1.0];
        assert!(!is_monotone(&g, &u, &[1, 2, 3]));
        let s = straighten(&g, &u, &[1, 2, 3]);
        assert_eq!(s, vec![0.0, 0.5, 0.5, 0.5, 1.0]);
        assert!(is_monotone(&g, &s, &[1, 2, 3]));
        for p in [1.0, 2.0, 4.0] {
            assert!(g.p_energy(&s, p) <= g.p_energy(&u, p));
        }
    }

    #[test]
    fn empty_domain_is_vacuous() {
        let g = MetricMeasureGraph::path(2);
        assert!(is_monotone(&g, &[3.0, -1.0, 7.0], &[]));
    }

    #[test]
    fn pit_is_filled() {
        let g = MetricMeasureGraph::cycle(6);
        let u = [1.0, 1.0, -5.0, 1.0, 1.0, 3.0];
        let s = straighten(&g, &u, &[1, 2, 3]);
        assert_eq!(s[2], 1.0);
        assert_eq!(s[5], 3.0);
    }
}
