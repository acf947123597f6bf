use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::asymptotics::{LimitEstimate, TotalCurvatureResult};
use crate::ends::EndsBound;
use crate::error::Result;
use crate::model_space::GrowthCoefficient;
use crate::profile::CurvatureProfile;

/// Significant digits kept for every float in the JSON report.
pub const REPORT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub profile: CurvatureProfile,
    pub n: usize,
    pub tol: f64,
    pub t_end: f64,
    pub sample_count: Option<usize>,
}

/// A statement certified for the manifold, with the numbers behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub id: String,
    pub statement: String,
    pub reason: String,
}

pub mod ids {
    pub const GROWTH_LIMIT_EXISTS: &str = "growth_limit_exists";
    pub const FINITE_TOPOLOGICAL_TYPE: &str = "finite_topological_type";
    pub const TOTAL_CURVATURE_BELOW_2PI: &str = "total_curvature_below_2pi";
    pub const ENDS_BOUND: &str = "ends_bound";
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleAnalysis {
    pub ratios: Vec<f64>,
    pub monotone_ok: bool,
    /// Tail average of `vol_i / t_iⁿ`, compared with the factorised limit.
    pub direct_growth: f64,
    pub estimator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub inputs: Inputs,
    /// `∫ K₋ dM̃² > -∞` (and the positive part converges).
    pub hypothesis_holds: bool,
    pub total_curvature: TotalCurvatureResult,
    pub slope_limit: LimitEstimate,
    pub m_prime_limit: Option<LimitEstimate>,
    pub growth: GrowthCoefficient,
    pub samples: Option<SampleAnalysis>,
    pub ratio_limit: Option<LimitEstimate>,
    pub manifold_growth_limit: Option<LimitEstimate>,
    pub ends: Option<EndsBound>,
    pub conclusions: Vec<Conclusion>,
    pub warnings: Vec<String>,
}

impl TheoremReport {
    pub fn has_conclusion(&self, id: &str) -> bool {
        self.conclusions.iter().any(|c| c.id == id)
    }

    /// Pretty JSON with sorted keys and floats rounded to
    /// [`REPORT_DIGITS`] significant digits; identical reports give
    /// identical bytes.
    pub fn to_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        round_floats(&mut value);
        let mut out = serde_json::to_string_pretty(&value)?;
        out.push('\n');
        Ok(out)
    }
}

fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(r) = num.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}
