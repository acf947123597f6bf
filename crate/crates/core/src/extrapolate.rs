//! Richardson extrapolation of sequences sampled on a geometric grid.

/// Richardson table for `values[i] ≈ L + Σ_j c_j h_i^{p_j}` with
/// `h_{i+1} = h_i / ratio` and exponents `first_order, first_order + 1, ...`.
///
/// `values` run from coarsest to finest. Returns the diagonal of the
/// table: entry `i` combines `values[0..=i]`.
pub fn richardson_diagonal(values: &[f64], ratio: f64, first_order: u32) -> Vec<f64> {
    let mut prev: Vec<f64> = values.to_vec();
    let mut diag = Vec::with_capacity(values.len());
    if let Some(&v) = values.first() {
        diag.push(v);
    }
    for level in 1..values.len() {
        let factor = ratio.powi((first_order + level as u32 - 1) as i32) - 1.0;
        let next: Vec<f64> = prev
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / factor)
            .collect();
        diag.push(*next.last().unwrap());
        prev = next;
    }
    diag
}

/// Extrapolated limit and the spread (max - min) of the last three
/// accelerants, used as an error estimate.
pub fn extrapolate(values: &[f64], ratio: f64, first_order: u32) -> (f64, f64) {
    let diag = richardson_diagonal(values, ratio, first_order);
    let last = diag[diag.len().saturating_sub(3)..].iter().copied();
    let (lo, hi) = last.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    (*diag.last().unwrap(), hi - lo)
}
