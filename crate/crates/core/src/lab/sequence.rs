use serde::Serialize;

use super::LabError;

/// Minimal constants for which a finite window of a sequence satisfies the
/// quasi-straight inequalities
/// `d(z_k, z_{k+1}) <= 1 + K` and `d(z_i, z_j) + d(z_j, z_k) - d(z_i, z_k) <= K d(z_i, z_k) + K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceDefectReport {
    #[serde(rename = "K_step")]
    pub k_step: f64,
    #[serde(rename = "K_align")]
    pub k_align: f64,
    #[serde(rename = "K")]
    pub k: f64,
    /// Whether distances from the middle point keep growing towards both ends
    /// of the window. A heuristic: a finite window cannot prove unboundedness.
    pub unbounded_both_sides: bool,
}

pub fn quasi_straight_defect<T>(seq: &[T], metric: impl Fn(&T, &T) -> f64) -> Result<SequenceDefectReport, LabError> {
    let n = seq.len();
    if n < 3 {
        return Err(LabError::WindowTooShort(n));
    }
    let d: Vec<Vec<f64>> = seq.iter().map(|a| seq.iter().map(|b| metric(a, b)).collect()).collect();
    let k_step = (0..n - 1).map(|k| d[k][k + 1] - 1.0).fold(0.0, f64::max);
    let mut k_align = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let excess = d[i][j] + d[j][k] - d[i][k];
                k_align = k_align.max(excess / (d[i][k] + 1.0));
            }
        }
    }
    let mid = n / 2;
    // Outer half of each side must reach farther from the middle than the inner half.
    let reach = |range: std::ops::Range<usize>| range.map(|i| d[mid][i]).fold(0.0, f64::max);
    let left = reach(0..mid / 2) > reach(mid / 2..mid);
    let right = reach(mid + (n - mid) / 2..n) > reach(mid..mid + (n - mid) / 2);
    Ok(SequenceDefectReport {
        k_step,
        k_align,
        k: k_step.max(k_align),
        unbounded_both_sides: left && right,
    })
}
