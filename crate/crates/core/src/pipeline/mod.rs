//! End-to-end evaluation: model quantities, optional volume data for the
//! manifold, and the conclusions they certify.

mod config;
mod report;
mod samples;

use std::f64::consts::PI;

pub use config::{Config, Options, DEFAULT_TOL, DEFAULT_T_END, TOL_ENV};
pub use report::{ids, Conclusion, Inputs, SampleAnalysis, TheoremReport, REPORT_DIGITS};
pub use samples::{bg_ratio_check, ingest_samples, RatioCheck, VolumeSamples};

use crate::asymptotics::{
    m_prime_limit, slope_limit, total_curvature, Classification, LimitEstimate,
};
use crate::ends::ends_bound_from;
use crate::error::{Error, Result};
use crate::jacobi::solve;
use crate::model_space::ModelSpace;
use crate::profile::CurvatureProfile;

/// Growth routes may differ by this much (relative) before a warning.
const FACTORISATION_WARN: f64 = 0.05;
/// Nonzero-limit test: value must exceed this many error estimates.
const SIGNAL_TO_ERROR: f64 = 10.0;

fn fmt(x: f64) -> String {
    format!("{x:.9}")
}

/// Run the full chain for profile `K` in dimension `n`, optionally with
/// measured ball volumes of the manifold.
///
/// A zero of the warping function is an error ([`Error::CompactModel`]);
/// a divergent total curvature yields a report with
/// `hypothesis_holds = false` and no conclusions.
pub fn evaluate_theorem(
    profile: &CurvatureProfile,
    n: usize,
    opts: Options,
    samples: Option<&VolumeSamples>,
) -> Result<TheoremReport> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
    }
    opts.validate()?;
    let mut warnings = Vec::new();
    for (t, jump) in profile.jumps() {
        warnings.push(format!("curvature profile jumps by {jump} at t = {t}"));
    }

    let f = solve(profile, opts.t_end, opts.tol)?;
    if let Some(t) = f.first_zero() {
        return Err(Error::CompactModel { t });
    }
    let total = total_curvature(profile, &f, opts.tol)?;
    let slope = slope_limit(&f);
    let m_prime = match m_prime_limit(profile, opts.tol) {
        Ok(l) => Some(l),
        Err(e @ (Error::NonConvergence { .. } | Error::CrossCheck(_))) => {
            warnings.push(format!("lim m' unavailable: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let ends = m_prime.map(|m| ends_bound_from(m, n)).transpose()?;

    let ms = ModelSpace::new(n, f)?;
    let growth = ms.growth_coefficient(&total);

    let hypothesis_holds = matches!(total.classification, Classification::Finite { .. });
    match total.classification {
        Classification::NegativeDivergent => warnings.push(
            "hypothesis ∫ K₋ dM̃² > -∞ fails: total curvature is -∞; no conclusions".into(),
        ),
        Classification::PositiveDivergent => warnings.push(
            "positive curvature does not decay fast enough for a noncompact model; no conclusions"
                .into(),
        ),
        Classification::Finite { value, err } => {
            if let (Some(s), Some(s_err)) = (slope.value(), slope.err()) {
                let gap = (value - 2.0 * PI * (1.0 - s)).abs();
                if gap > 1e-5_f64.max(10.0 * (err + 2.0 * PI * s_err)) {
                    warnings.push(format!(
                        "c = {} disagrees with 2π(1 - lim f') = {}",
                        fmt(value),
                        fmt(2.0 * PI * (1.0 - s))
                    ));
                }
            }
        }
    }
    if let Some(d) = growth.discrepancy {
        let errs = growth.direct.err().unwrap_or(0.0)
            + growth.closed_form.and_then(|c| c.err()).unwrap_or(0.0);
        if d > 1e-5_f64.max(20.0 * errs) {
            warnings.push(format!("growth coefficient routes differ by {d:.3e}"));
        }
    }

    let mut sample_analysis = None;
    let mut ratio_limit = None;
    let mut manifold_growth_limit = None;
    if let Some(s) = samples {
        if !hypothesis_holds {
            warnings.push("volume samples ignored: hypothesis fails".into());
        } else {
            let check = bg_ratio_check(s, &ms)?;
            warnings.extend(check.warnings.iter().cloned());
            let scaled: Vec<f64> = s
                .rows
                .iter()
                .map(|&(t, vol)| vol / t.powi(n as i32))
                .collect();
            let (direct_growth, _) = samples::tail_average(&scaled);
            if let (Some(g), Some(g_err), Some(r), Some(r_err)) = (
                growth.direct.value(),
                growth.direct.err(),
                check.ratio_limit.value(),
                check.ratio_limit.err(),
            ) {
                let value = r * g;
                let err = r.abs() * g_err + g.abs() * r_err;
                manifold_growth_limit = Some(LimitEstimate::Finite { value, err });
                if (direct_growth - value).abs() > FACTORISATION_WARN * value.abs() {
                    warnings.push(format!(
                        "sampled vol/tⁿ = {} differs from ratio × model growth = {} by more than 5%",
                        fmt(direct_growth),
                        fmt(value)
                    ));
                }
            }
            ratio_limit = Some(check.ratio_limit);
            sample_analysis = Some(SampleAnalysis {
                ratios: check.ratios,
                monotone_ok: check.monotone_ok,
                direct_growth,
                estimator: "tail average of the last ratios (heuristic, no convergence rate known)"
                    .into(),
            });
        }
    }

    let mut conclusions = Vec::new();
    if hypothesis_holds {
        conclusions.push(Conclusion {
            id: ids::GROWTH_LIMIT_EXISTS.into(),
            statement: "lim vol B_t(p)/tⁿ exists and lies in [0, ∞)".into(),
            reason: format!(
                "c(M̃²) = {} is finite; the model growth coefficient is {}",
                fmt(total.value().unwrap_or(f64::NAN)),
                growth.direct.value().map_or("divergent".into(), fmt)
            ),
        });
        let monotone = sample_analysis.as_ref().is_some_and(|a| a.monotone_ok);
        let nonzero = manifold_growth_limit
            .and_then(|l| Some((l.value()?, l.err()?)))
            .filter(|&(v, e)| v > SIGNAL_TO_ERROR * e && v > 0.0);
        if let (true, Some((v, e))) = (monotone, nonzero) {
            let why = format!("lim vol B_t(p)/tⁿ = {} ± {:.3e} is nonzero", fmt(v), e);
            conclusions.push(Conclusion {
                id: ids::FINITE_TOPOLOGICAL_TYPE.into(),
                statement: "M has finite topological type".into(),
                reason: why.clone(),
            });
            conclusions.push(Conclusion {
                id: ids::TOTAL_CURVATURE_BELOW_2PI.into(),
                statement: "c(M̃²) ∈ (-∞, 2π)".into(),
                reason: format!("{why}; computed c(M̃²) = {}", fmt(total.value().unwrap_or(f64::NAN))),
            });
            if let Some(b) = ends.filter(|b| b.conclusive) {
                let k = b.integer_bound.unwrap_or(0);
                conclusions.push(Conclusion {
                    id: ids::ENDS_BOUND.into(),
                    statement: format!("number of ends ≤ {k}"),
                    reason: format!(
                        "lim m' = {}; 2(lim m')^(n-1) = {}",
                        fmt(b.m_prime_inf.value().unwrap_or(f64::NAN)),
                        fmt(b.raw_bound.unwrap_or(f64::NAN))
                    ),
                });
            }
        }
    }

    Ok(TheoremReport {
        inputs: Inputs {
            profile: profile.clone(),
            n,
            tol: opts.tol,
            t_end: opts.t_end,
            sample_count: samples.map(|s| s.rows.len()),
        },
        hypothesis_holds,
        total_curvature: total,
        slope_limit: slope,
        m_prime_limit: m_prime,
        growth,
        samples: sample_analysis,
        ratio_limit,
        manifold_growth_limit,
        ends,
        conclusions,
        warnings,
    })
}
