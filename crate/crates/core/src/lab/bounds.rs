use super::LabError;

/// Closed-form upper bound for `Cap_p(B(o, r); X \ B(o, R))` in a space whose
/// balls satisfy `mu(B(o, s)) <= C s^q`.
///
/// With `L = ln R - ln r`: for `p = q` the bound is `C (1 + q L) / L^q`,
/// otherwise `C (-(q/(p-q)) R^(q-p) + (p/(p-q)) r^(q-p)) / L^p`.
pub fn annulus_capacity_bound(c: f64, q: f64, p: f64, r_inner: f64, r_outer: f64) -> Result<f64, LabError> {
    if !(r_inner > 0.0 && r_inner < r_outer && r_outer.is_finite()) {
        return Err(LabError::BadRadii);
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(LabError::BadParameter(format!("C must be positive, got {c}")));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(LabError::BadParameter(format!("q must exceed 1, got {q}")));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(LabError::BadExponent(format!("1 <= p < inf, got {p}")));
    }
    let log_ratio = r_outer.ln() - r_inner.ln();
    if p == q {
        return Ok(c * (1.0 + q * log_ratio) / log_ratio.powf(q));
    }
    let gap = p - q;
    let numerator = -(q / gap) * r_outer.powf(q - p) + (p / gap) * r_inner.powf(q - p);
    Ok(c * numerator / log_ratio.powf(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn worked_values() {
        assert!((annulus_capacity_bound(1.0, 2.0, 2.0, 1.0, E).unwrap() - 3.0).abs() < 1e-12);
        let expected = 3.0 - 2.0 / E;
        assert!((annulus_capacity_bound(1.0, 2.0, 3.0, 1.0, E).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn decays_as_ratio_grows() {
        let mut last = f64::INFINITY;
        for k in 1..40 {
            let b = annulus_capacity_bound(1.0, 2.0, 2.0, 1.0, (k as f64).exp()).unwrap();
            assert!(b < last);
            last = b;
        }
        assert!(last < 0.1);
    }

    #[test]
    fn rejects_bad_radii() {
        assert_eq!(annulus_capacity_bound(1.0, 2.0, 2.0, 2.0, 1.0), Err(LabError::BadRadii));
        assert_eq!(annulus_capacity_bound(1.0, 2.0, 2.0, 0.0, 1.0), Err(LabError::BadRadii));
        assert!(annulus_capacity_bound(-1.0, 2.0, 2.0, 1.0, 2.0).is_err());
    }
}
