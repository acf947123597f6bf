//! Angle separation of ends-defining rays and the resulting cap on the
//! number of ends: `#Ends ≤ 2 (π / 2λ)^{n-1} = 2 (m'∞)^{n-1}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{m_prime_limit, LimitEstimate};
use crate::error::{Error, Result};
use crate::profile::CurvatureProfile;

/// Slack for `m'∞ ≥ 1` and `2λ ≤ π` under rounding.
const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndsBound {
    pub m_prime_inf: LimitEstimate,
    /// Lower bound `2λ` on the angle between rays of distinct ends; zero
    /// when inconclusive.
    pub two_lambda: f64,
    pub raw_bound: Option<f64>,
    pub integer_bound: Option<u64>,
    pub conclusive: bool,
}

/// `2λ = π / m'∞`. `None` when `m'∞` diverges.
pub fn angle_bound(m_prime_inf: &LimitEstimate) -> Result<Option<f64>> {
    match *m_prime_inf {
        LimitEstimate::Divergent { .. } => Ok(None),
        LimitEstimate::Finite { value, .. } if value >= 1.0 - SLACK && value.is_finite() => {
            Ok(Some(PI / value.max(1.0)))
        }
        LimitEstimate::Finite { value, .. } => Err(Error::Domain(format!(
            "lim m' must be at least 1, got {value}"
        ))),
    }
}

/// Packing count `2 (π / 2λ)^{n-1}` for caps of angular radius `λ`.
pub fn packing_bound(two_lambda: f64, n: usize) -> Result<f64> {
    if !(two_lambda > 0.0 && two_lambda <= PI + SLACK) {
        return Err(Error::Domain(format!(
            "angle must lie in (0, π], got {two_lambda}"
        )));
    }
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
    }
    Ok(2.0 * (PI / two_lambda).powi(n as i32 - 1))
}

/// Assemble the bound from an already computed `m'∞`.
pub fn ends_bound_from(m_prime_inf: LimitEstimate, n: usize) -> Result<EndsBound> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
    }
    Ok(match angle_bound(&m_prime_inf)? {
        Some(two_lambda) => {
            let raw = packing_bound(two_lambda, n)?;
            EndsBound {
                m_prime_inf,
                two_lambda,
                raw_bound: Some(raw),
                integer_bound: Some(raw.floor() as u64),
                conclusive: true,
            }
        }
        None => EndsBound {
            m_prime_inf,
            two_lambda: 0.0,
            raw_bound: None,
            integer_bound: None,
            conclusive: false,
        },
    })
}

pub fn ends_bound(profile: &CurvatureProfile, n: usize, tol: f64) -> Result<EndsBound> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
    }
    ends_bound_from(m_prime_limit(profile, tol)?, n)
}
