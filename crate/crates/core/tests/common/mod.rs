use geolie::lab::MetricMeasureGraph;

/// Minimum of the discrete energy over potentials on at most four free
/// vertices: coarse grid, then pattern search down to a 1e-7 step.
pub fn brute_force_capacity(g: &MetricMeasureGraph, e: &[usize], f: &[usize], p: f64) -> f64 {
    let n = g.vertex_count();
    let free: Vec<usize> = (0..n).filter(|x| !e.contains(x) && !f.contains(x)).collect();
    let k = free.len();
    let energy = |vals: &[f64]| {
        let mut u = vec![0.0; n];
        for &x in e {
            u[x] = 1.0;
        }
        for (&x, &v) in free.iter().zip(vals) {
            u[x] = v;
        }
        g.p_energy(&u, p)
    };
    if p == 1.0 {
        // The 1-energy is minimized by an indicator: enumerate cuts.
        return (0u32..1 << k)
            .map(|bits| energy(&(0..k).map(|i| f64::from((bits >> i) & 1)).collect::<Vec<_>>()))
            .fold(f64::INFINITY, f64::min);
    }
    let steps = 20usize;
    let mut best = (f64::INFINITY, vec![0.0; k]);
    for idx in 0..(steps + 1).pow(k as u32) {
        let vals: Vec<f64> = (0..k).map(|i| ((idx / (steps + 1).pow(i as u32)) % (steps + 1)) as f64 / steps as f64).collect();
        let en = energy(&vals);
        if en < best.0 {
            best = (en, vals);
        }
    }
    let mut h = 1.0 / steps as f64;
    while h > 1e-7 {
        let mut improved = false;
        for idx in 0..5usize.pow(k as u32) {
            let vals: Vec<f64> = (0..k)
                .map(|i| (best.1[i] + h * (((idx / 5usize.pow(i as u32)) % 5) as f64 - 2.0)).clamp(0.0, 1.0))
                .collect();
            let en = energy(&vals);
            if en < best.0 {
                best = (en, vals);
                improved = true;
            }
        }
        if !improved {
            h /= 2.0;
        }
    }
    best.0
}
