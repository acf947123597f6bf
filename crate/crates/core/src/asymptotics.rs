//! Total curvature and the limits `lim f'(t)` and `lim m'(t)`.
//!
//! Improper integrals are split into a quadrature over the solution
//! window and a closed-form tail built from the profile's tail model and
//! the linear asymptote of `f`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extrapolate::extrapolate;
use crate::jacobi::{solve_m, WarpingSolution};
use crate::profile::{CurvatureProfile, MomentClass, TailModel};
use crate::quadrature::{integrate, Tolerance};

/// `f'` probes above this, while increasing, count as divergence.
pub const SLOPE_DIVERGENCE: f64 = 1e6;
/// First horizon of the `m'` doubling search.
pub const M_START_HORIZON: f64 = 64.0;
/// Largest horizon of the `m'` doubling search.
pub const M_MAX_HORIZON: f64 = 1_048_576.0;
/// Probes `t_k = T / 2^k` for `k = 0..PROBES`.
pub const PROBES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitEstimate {
    Finite { value: f64, err: f64 },
    /// Carries the last finite probe.
    Divergent { last_probe: f64 },
}

impl LimitEstimate {
    pub fn value(&self) -> Option<f64> {
        match *self {
            LimitEstimate::Finite { value, .. } => Some(value),
            LimitEstimate::Divergent { .. } => None,
        }
    }

    pub fn err(&self) -> Option<f64> {
        match *self {
            LimitEstimate::Finite { err, .. } => Some(err),
            LimitEstimate::Divergent { .. } => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, LimitEstimate::Divergent { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Finite { value: f64, err: f64 },
    NegativeDivergent,
    PositiveDivergent,
}

/// `c = c₊ + c₋` with `c± = 2π ∫ K± f dt`. Divergent parts are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TotalCurvatureResult {
    pub classification: Classification,
    pub c_plus: Option<f64>,
    pub c_minus: Option<f64>,
}

impl TotalCurvatureResult {
    pub fn value(&self) -> Option<f64> {
        match self.classification {
            Classification::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn err(&self) -> Option<f64> {
        match self.classification {
            Classification::Finite { err, .. } => Some(err),
            _ => None,
        }
    }
}

/// Geometric probes `t_k = end / 2^k`, ordered from the smallest `t`.
pub(crate) fn probe_times(end: f64) -> Vec<f64> {
    (0..PROBES)
        .rev()
        .map(|k| end / 2f64.powi(k as i32))
        .collect()
}

/// Limit of a sequence sampled at geometric probes (smallest `t` first).
///
/// A strictly increasing sequence is divergent when it passes `cap` or
/// when its increments stop contracting (last over previous ≥ 0.95).
pub(crate) fn probe_limit(values: &[f64], cap: f64) -> LimitEstimate {
    let last = *values.last().expect("at least one probe");
    let incs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = incs.iter().all(|&d| d > 0.0);
    if increasing {
        let n = incs.len();
        let stalled = n >= 2
            && incs[n - 1] >= 0.95 * incs[n - 2]
            && incs[n - 1] > 1e-6 * last.abs().max(1.0);
        if last > cap || stalled {
            return LimitEstimate::Divergent { last_probe: last };
        }
    }
    let (value, err) = extrapolate(values, 2.0, 1);
    LimitEstimate::Finite { value, err }
}

/// `lim f(t)/t = lim f'(t)` from Richardson-accelerated `f'` probes over
/// the reached solution window.
pub fn slope_limit(f: &WarpingSolution) -> LimitEstimate {
    let end = f.reached();
    let last = f.nodes().last().map_or(1.0, |n| n.fp);
    if f.blow_up().is_some() || end <= 0.0 {
        return LimitEstimate::Divergent { last_probe: last };
    }
    let probes: Vec<f64> = probe_times(end)
        .into_iter()
        .map(|t| f.eval_unchecked(t).1)
        .collect();
    probe_limit(&probes, SLOPE_DIVERGENCE)
}

/// `∫_T^∞ a (1+t)^-p (f(T) + s (t - T)) dt` for `p > 2`.
fn power_tail_integral(a: f64, p: f64, end: f64, f_end: f64, s: f64) -> f64 {
    let u = 1.0 + end;
    a * (s * u.powf(2.0 - p) / (p - 2.0) + (f_end - s * u) * u.powf(1.0 - p) / (p - 1.0))
}

fn tail_diverges(tail: TailModel) -> bool {
    match tail {
        TailModel::Zero => false,
        TailModel::Constant { .. } => true,
        TailModel::PowerDecay { p, .. } => p <= 2.0,
    }
}

/// Quadrature of `part(t) f(t)` over `[0, end]` plus its closed-form
/// tail. Returns `(integral, error estimate)`.
fn part_integral(
    part: &CurvatureProfile,
    f: &WarpingSolution,
    end: f64,
    slope: (f64, f64),
    abs_tol: f64,
) -> (f64, f64) {
    let mut pts = f.partition(0.0, end);
    pts.extend(part.breakpoints().into_iter().filter(|&b| b > 0.0 && b < end));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let q = integrate(
        |t| part.eval_unchecked(t) * f.eval_unchecked(t).0,
        &pts,
        Tolerance::abs(abs_tol),
    );
    let (f_end, fp_end) = f.eval_unchecked(end);
    let (s, s_err) = slope;
    let (tail, tail_err) = match part.tail() {
        TailModel::PowerDecay { a, p } if end >= part.t_tail() => {
            let v = power_tail_integral(a, p, end, f_end, s);
            let lin = (1.0 + end).powf(2.0 - p) / (p - 2.0);
            (v, a.abs() * lin * ((fp_end - s).abs() + s_err))
        }
        _ => (0.0, 0.0),
    };
    (q.value + tail, q.err + tail_err)
}

/// `c = 2π ∫₀^∞ K f dt`, split into positive and negative parts.
///
/// Divergence is decided from the tail models; otherwise the window
/// `[0, f.t_end()]` is integrated to `tol/2` and the rest is closed form.
pub fn total_curvature(
    profile: &CurvatureProfile,
    f: &WarpingSolution,
    tol: f64,
) -> Result<TotalCurvatureResult> {
    if let Some(t) = f.first_zero() {
        return Err(Error::CompactModel { t });
    }
    let neg = profile.negative_part();
    let pos = profile.positive_part();
    if tail_diverges(neg.tail()) {
        return Ok(TotalCurvatureResult {
            classification: Classification::NegativeDivergent,
            c_plus: None,
            c_minus: None,
        });
    }
    if tail_diverges(pos.tail()) {
        return Ok(TotalCurvatureResult {
            classification: Classification::PositiveDivergent,
            c_plus: None,
            c_minus: None,
        });
    }
    let end = f.t_end();
    if let Some(t) = f.blow_up() {
        return Err(Error::Integration {
            t,
            reason: "warping function overflowed before the window end".into(),
        });
    }
    if end < profile.t_tail() {
        return Err(Error::Config(format!(
            "solution window {end} ends before the tail regime starts at {}",
            profile.t_tail()
        )));
    }

    let slope = match slope_limit(f) {
        LimitEstimate::Finite { value, err } => (value, err),
        LimitEstimate::Divergent { .. } => (f.eval_unchecked(end).1, 0.0),
    };
    let (minus, minus_err) = part_integral(&neg, f, end, slope, tol / 4.0);
    let (plus, plus_err) = part_integral(&pos, f, end, slope, tol / 4.0);
    let c_minus = 2.0 * PI * minus;
    let c_plus = 2.0 * PI * plus;
    let value = c_plus + c_minus;
    let err = 2.0 * PI * (minus_err + plus_err);
    if value > 2.0 * PI + 1e-6 {
        return Err(Error::CrossCheck(format!(
            "total curvature {value} exceeds 2π for a noncompact model"
        )));
    }
    Ok(TotalCurvatureResult {
        classification: Classification::Finite { value, err },
        c_plus: Some(c_plus),
        c_minus: Some(c_minus),
    })
}

/// `lim m'(t)` for `m'' + K₋ m = 0`, by doubling the horizon from
/// [`M_START_HORIZON`] until `|m'(2T) - m'(T)| < tol`.
///
/// The value is cross-checked against `1 - c(M*)/2π`, where `c(M*)` is
/// the total curvature of the `(K₋, m)` surface on the final window.
pub fn m_prime_limit(profile: &CurvatureProfile, tol: f64) -> Result<LimitEstimate> {
    let neg = profile.negative_part();
    if profile.tail_moment_class() == MomentClass::DivergentMoment {
        let m = solve_m(profile, M_START_HORIZON, tol)?;
        let last = m.nodes().last().map_or(1.0, |n| n.fp);
        return Ok(LimitEstimate::Divergent { last_probe: last });
    }
    let mut horizon = M_START_HORIZON;
    while horizon <= M_MAX_HORIZON {
        let m = solve_m(profile, 2.0 * horizon, tol)?;
        if m.blow_up().is_some() {
            let last = m.nodes().last().map_or(1.0, |n| n.fp);
            return Ok(LimitEstimate::Divergent { last_probe: last });
        }
        let near = m.eval_unchecked(horizon).1;
        let far = m.eval_unchecked(2.0 * horizon).1;
        let diff = (far - near).abs();
        // K₋ may still be nonzero past the explicit segments
        if diff < tol && horizon >= neg.t_tail() {
            let c_star = total_curvature(&neg, &m, tol)?;
            if let Some(c) = c_star.value() {
                let identity = 1.0 - c / (2.0 * PI);
                if (identity - far).abs() > 10.0 * tol {
                    return Err(Error::CrossCheck(format!(
                        "m'(∞) = {far} but 1 - c(M*)/2π = {identity}"
                    )));
                }
            }
            return Ok(LimitEstimate::Finite {
                value: far,
                err: diff,
            });
        }
        horizon *= 2.0;
    }
    Err(Error::NonConvergence { horizon })
}
