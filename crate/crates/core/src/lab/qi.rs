use serde::Serialize;

use super::LabError;

/// Exact fit of `d(f x, f x') <= L d(x, x') + C` from sampled distance pairs,
/// together with dyadic-band diagnostics for both directions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QiEstimate {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "C")]
    pub c: f64,
    /// `(band start 2^k, max image/domain)` over domain distances in `[2^k, 2^(k+1))`.
    pub band_upper: Vec<(f64, f64)>,
    /// `(band start, max domain/image)` over the same bands.
    #[serde(serialize_with = "crate::report::extended_float_pairs")]
    pub band_lower: Vec<(f64, f64)>,
    /// Band ratios for the upper bound keep growing: no uniform `L` fits at large scale.
    pub not_large_scale_lipschitz: bool,
    /// Band ratios for the lower bound keep growing: no `d/L - C` lower bound fits.
    pub no_uniform_lower_bound: bool,
}

/// Strictly increasing with at least three bands and a doubling overall.
fn keeps_growing(bands: &[(f64, f64)]) -> bool {
    bands.len() >= 3
        && bands.windows(2).all(|w| w[1].1 > w[0].1)
        && bands[bands.len() - 1].1 >= 2.0 * bands[0].1
}

/// `pairs[i] = (domain distance, image distance)`.
pub fn estimate_qi_constants(pairs: &[(f64, f64)]) -> Result<QiEstimate, LabError> {
    if pairs.is_empty() {
        return Err(LabError::EmptySample);
    }
    let l = pairs
        .iter()
        .filter(|(dom, _)| *dom >= 1.0)
        .map(|(dom, img)| img / dom)
        .fold(0.0, f64::max);
    let c = pairs
        .iter()
        .filter(|(dom, _)| *dom < 1.0)
        .map(|(dom, img)| img - l * dom)
        .fold(0.0, f64::max);
    let mut upper = std::collections::BTreeMap::<i32, f64>::new();
    let mut lower = std::collections::BTreeMap::<i32, f64>::new();
    for &(dom, img) in pairs.iter().filter(|(dom, _)| *dom >= 1.0) {
        let band = dom.log2().floor() as i32;
        let up = upper.entry(band).or_insert(0.0);
        *up = up.max(img / dom);
        let down = lower.entry(band).or_insert(0.0);
        *down = down.max(if img > 0.0 { dom / img } else { f64::INFINITY });
    }
    let as_list = |m: std::collections::BTreeMap<i32, f64>| -> Vec<(f64, f64)> {
        m.into_iter().map(|(k, v)| (2f64.powi(k), v)).collect()
    };
    let band_upper = as_list(upper);
    let band_lower = as_list(lower);
    Ok(QiEstimate {
        l,
        c,
        not_large_scale_lipschitz: keeps_growing(&band_upper),
        no_uniform_lower_bound: keeps_growing(&band_lower),
        band_upper,
        band_lower,
    })
}
