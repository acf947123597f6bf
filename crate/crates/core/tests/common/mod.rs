#![allow(dead_code)]

use rand::Rng;
use radialgeo::{CurvatureProfile, Expr, Segment, TailModel};

/// `K = c0 + c1 (t - s)/(e - s)` on `[s, e)`.
pub fn linear_segment(start: f64, end: f64, c0: f64, c1: f64) -> Segment {
    let len = end - start;
    Segment {
        start,
        end,
        expr: Expr::Poly(vec![c0 - c1 * start / len, c1 / len]),
    }
}

/// Up to four linear pieces covering `[0, T]` with `T < horizon`, local
/// coefficients in `[-1, 1]`, zero beyond `T`. Pieces may jump.
pub fn random_pl_profile(rng: &mut impl Rng, horizon: f64) -> CurvatureProfile {
    let pieces = rng.gen_range(1..=4);
    let mut cuts: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.5..horizon)).collect();
    cuts.sort_by(f64::total_cmp);
    let mut start = 0.0;
    let mut segments = Vec::new();
    for end in cuts {
        if end - start < 1e-3 {
            continue;
        }
        segments.push(linear_segment(start, end, rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)));
        start = end;
    }
    CurvatureProfile::new(segments, TailModel::Zero).unwrap()
}
