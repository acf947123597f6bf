//! Rotationally symmetric comparison spaces `dt² + f(t)² ds²_{S^{n-1}}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{probe_limit, probe_times, Classification, LimitEstimate, TotalCurvatureResult};
use crate::error::{Error, Result};
use crate::jacobi::WarpingSolution;
use crate::quadrature::{integrate, Tolerance};

/// Relative accuracy of ball volumes.
const VOLUME_REL_TOL: f64 = 1e-10;
/// Divergence cap for `vol B_t / tⁿ` probes.
const GROWTH_DIVERGENCE: f64 = 1e12;

/// Volume `ω_{n-1} = 2π^{n/2} / Γ(n/2)` of the unit `(n-1)`-sphere.
///
/// Uses `ω_{k+1} = 2π ω_{k-1} / k` from `ω₀ = 2`, `ω₁ = 2π`, which
/// avoids evaluating the gamma function.
pub fn unit_sphere_volume(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
    }
    let (mut w, mut k) = if n.is_multiple_of(2) { (2.0 * PI, 2) } else { (4.0 * PI, 3) };
    while k < n {
        w *= 2.0 * PI / k as f64;
        k += 2;
    }
    Ok(w)
}

/// Asymptotic volume growth `lim vol B_t / tⁿ` by two routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthCoefficient {
    /// Extrapolated from ball volumes.
    pub direct: LimitEstimate,
    /// `(ω_{n-1}/n)(1 - c/2π)^{n-1}`; `None` when `c` is `+∞`.
    pub closed_form: Option<LimitEstimate>,
    pub discrepancy: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ModelSpace {
    n: usize,
    omega: f64,
    f: WarpingSolution,
}

impl ModelSpace {
    pub fn new(n: usize, f: WarpingSolution) -> Result<Self> {
        let omega = unit_sphere_volume(n)?;
        if let Some(t) = f.first_zero() {
            return Err(Error::CompactModel { t });
        }
        Ok(ModelSpace { n, omega, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn warping(&self) -> &WarpingSolution {
        &self.f
    }

    /// `vol B_t = ω_{n-1} ∫₀ᵗ f(r)^{n-1} dr`.
    pub fn ball_volume(&self, t: f64) -> Result<f64> {
        let end = self.f.reached();
        if !(t >= 0.0 && t <= end) {
            return Err(Error::Domain(format!(
                "radius {t} outside solution window [0, {end}]"
            )));
        }
        Ok(self.ball_volume_unchecked(t))
    }

    /// Ball volumes at increasing radii, integrating each gap once.
    pub fn ball_volumes(&self, radii: &[f64]) -> Result<Vec<f64>> {
        let power = (self.n - 1) as i32;
        let mut acc = 0.0;
        let mut prev = 0.0;
        let mut out = Vec::with_capacity(radii.len());
        for &t in radii {
            if t < prev || t > self.f.reached() {
                return Err(Error::Domain(format!(
                    "radius {t} out of order or outside [0, {}]",
                    self.f.reached()
                )));
            }
            if t > prev {
                let q = integrate(
                    |r| self.f.eval_unchecked(r).0.powi(power),
                    &self.f.partition(prev, t),
                    Tolerance::rel(VOLUME_REL_TOL),
                );
                acc += q.value;
            }
            prev = t;
            out.push(self.omega * acc);
        }
        Ok(out)
    }

    fn ball_volume_unchecked(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let power = (self.n - 1) as i32;
        let q = integrate(
            |r| self.f.eval_unchecked(r).0.powi(power),
            &self.f.partition(0.0, t),
            Tolerance::rel(VOLUME_REL_TOL),
        );
        self.omega * q.value
    }

    /// Direct route: Richardson-extrapolated `vol B_t / tⁿ` on the probe
    /// grid. Closed form from `c` when it is finite.
    pub fn growth_coefficient(&self, c: &TotalCurvatureResult) -> GrowthCoefficient {
        let end = self.f.reached();
        let n = self.n as i32;
        let direct = if self.f.blow_up().is_some() {
            LimitEstimate::Divergent {
                last_probe: self.ball_volume_unchecked(end) / end.powi(n),
            }
        } else {
            let probes: Vec<f64> = probe_times(end)
                .into_iter()
                .map(|t| self.ball_volume_unchecked(t) / t.powi(n))
                .collect();
            probe_limit(&probes, GROWTH_DIVERGENCE)
        };
        let base = self.omega / self.n as f64;
        let closed_form = match c.classification {
            Classification::Finite { value, err } => {
                let x = 1.0 - value / (2.0 * PI);
                let deriv = (n - 1) as f64 * x.abs().powi(n - 2);
                Some(LimitEstimate::Finite {
                    value: base * x.powi(n - 1),
                    err: base * deriv * err / (2.0 * PI),
                })
            }
            Classification::NegativeDivergent => Some(LimitEstimate::Divergent {
                last_probe: match direct {
                    LimitEstimate::Finite { value, .. } => value,
                    LimitEstimate::Divergent { last_probe } => last_probe,
                },
            }),
            Classification::PositiveDivergent => None,
        };
        let discrepancy = match (direct.value(), closed_form.and_then(|l| l.value())) {
            (Some(a), Some(b)) => Some((a - b).abs()),
            _ => None,
        };
        GrowthCoefficient {
            direct,
            closed_form,
            discrepancy,
        }
    }
}
