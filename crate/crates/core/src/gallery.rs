//! Built-in curvature profiles with closed-form reference values.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::profile::{CurvatureProfile, Expr, Segment, TailModel};

/// Expected total curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvatureOracle {
    Finite(f64),
    NegativeInfinite,
}

/// Expected value of a limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitOracle {
    Finite(f64),
    Divergent,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Oracle {
    /// Exact `(t, f(t))` pairs.
    pub f_at: Vec<(f64, f64)>,
    pub total_curvature: Option<CurvatureOracle>,
    pub slope: Option<LimitOracle>,
    pub m_prime_inf: Option<LimitOracle>,
    /// Expected first zero of `f` (compact models only).
    pub first_zero: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub profile: CurvatureProfile,
    pub oracle: Oracle,
    pub notes: &'static str,
}

/// Where the β-family switches from its exact rational form to a
/// matched `a/(1+t)^4` tail. The tail shifts `c` by well under `1e-8`.
pub const BETA_TAIL_START: f64 = 1024.0;

/// `f_β(t) = t exp(-β t²/(1+t²))`.
pub fn beta_warping(beta: f64, t: f64) -> f64 {
    t * (-beta * t * t / (1.0 + t * t)).exp()
}

/// `K = -f_β''/f_β = (β(6 + 4t² - 2t⁴) - 4β²t²) / (1+t²)⁴`.
pub fn beta_curvature_expr(beta: f64) -> Expr {
    Expr::Rational {
        num: vec![6.0 * beta, 0.0, 4.0 * beta - 4.0 * beta * beta, 0.0, -2.0 * beta],
        den: vec![1.0, 0.0, 4.0, 0.0, 6.0, 0.0, 4.0, 0.0, 1.0],
    }
}

/// The β-family profile: exact on `[0, BETA_TAIL_START)`, then a
/// continuous power-decay tail with the same leading `t⁻⁴` behaviour.
pub fn sign_changing_beta(beta: f64) -> CurvatureProfile {
    let expr = beta_curvature_expr(beta);
    let t1 = BETA_TAIL_START;
    let a = expr.eval(t1) * (1.0 + t1).powi(4);
    CurvatureProfile::new(
        vec![Segment {
            start: 0.0,
            end: t1,
            expr,
        }],
        TailModel::PowerDecay { a, p: 4.0 },
    )
    .expect("beta profile is well formed")
}

/// For `K = a/(1+t)^4` with `a < 0` the Jacobi solution is
/// `f(t) = (1+t) sinh(√-a · t/(1+t)) / √-a`, with `f'(∞) = sinh(√-a)/√-a`.
pub fn quartic_tail_warping(a: f64, t: f64) -> f64 {
    let r = (-a).sqrt();
    (1.0 + t) * (r * t / (1.0 + t)).sinh() / r
}

pub fn quartic_tail_slope(a: f64) -> f64 {
    let r = (-a).sqrt();
    r.sinh() / r
}

/// For `K = -1/(1+t)^2`, `f = ((1+t)^φ - (1+t)^(1-φ)) / √5` with φ the
/// golden ratio.
pub fn inverse_square_warping(t: f64) -> f64 {
    let s5 = 5f64.sqrt();
    let phi = 0.5 * (1.0 + s5);
    ((1.0 + t).powf(phi) - (1.0 + t).powf(1.0 - phi)) / s5
}

fn quartic_tail_entry(name: &'static str, a: f64, notes: &'static str) -> GalleryEntry {
    let slope = quartic_tail_slope(a);
    GalleryEntry {
        name,
        profile: CurvatureProfile::power_decay(a, 4.0).expect("valid tail"),
        oracle: Oracle {
            f_at: [1.0, 10.0, 100.0]
                .iter()
                .map(|&t| (t, quartic_tail_warping(a, t)))
                .collect(),
            total_curvature: Some(CurvatureOracle::Finite(2.0 * PI * (1.0 - slope))),
            slope: Some(LimitOracle::Finite(slope)),
            m_prime_inf: Some(LimitOracle::Finite(slope)),
            first_zero: None,
        },
        notes,
    }
}

fn beta_entry(name: &'static str, beta: f64, notes: &'static str) -> GalleryEntry {
    GalleryEntry {
        name,
        profile: sign_changing_beta(beta),
        oracle: Oracle {
            f_at: [0.5, 1.0, 5.0, 20.0]
                .iter()
                .map(|&t| (t, beta_warping(beta, t)))
                .collect(),
            total_curvature: Some(CurvatureOracle::Finite(2.0 * PI * (1.0 - (-beta).exp()))),
            slope: Some(LimitOracle::Finite((-beta).exp())),
            m_prime_inf: None,
            first_zero: None,
        },
        notes,
    }
}

/// All built-in entries.
pub fn list_gallery() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "flat",
            profile: CurvatureProfile::zero(),
            oracle: Oracle {
                f_at: vec![(1.0, 1.0), (10.0, 10.0)],
                total_curvature: Some(CurvatureOracle::Finite(0.0)),
                slope: Some(LimitOracle::Finite(1.0)),
                m_prime_inf: Some(LimitOracle::Finite(1.0)),
                first_zero: None,
            },
            notes: "Euclidean plane: f(t) = t",
        },
        GalleryEntry {
            name: "hyperbolic",
            profile: CurvatureProfile::constant(-1.0),
            oracle: Oracle {
                f_at: vec![(1.0, 1f64.sinh()), (2.0, 2f64.sinh())],
                total_curvature: Some(CurvatureOracle::NegativeInfinite),
                slope: Some(LimitOracle::Divergent),
                m_prime_inf: Some(LimitOracle::Divergent),
                first_zero: None,
            },
            notes: "hyperbolic plane: f(t) = sinh t",
        },
        GalleryEntry {
            name: "spherical",
            profile: CurvatureProfile::constant(1.0),
            oracle: Oracle {
                f_at: vec![(1.0, 1f64.sin()), (2.0, 2f64.sin())],
                total_curvature: None,
                slope: None,
                m_prime_inf: Some(LimitOracle::Finite(1.0)),
                first_zero: Some(PI),
            },
            notes: "round sphere: f(t) = sin t closes up at t = π",
        },
        quartic_tail_entry(
            "abresch_tail",
            -6.0,
            "K = -6/(1+t)^4; f = (1+t) sinh(√6 t/(1+t))/√6, asymptotically nonnegative",
        ),
        quartic_tail_entry(
            "abresch_tail_mild",
            -3.0,
            "K = -3/(1+t)^4; f = (1+t) sinh(√3 t/(1+t))/√3",
        ),
        beta_entry(
            "sign_changing_beta_ln2",
            LN_2,
            "K = -f''/f for f = t exp(-β t²/(1+t²)), β = ln 2; c = 2π(1 - e^-β) = π",
        ),
        beta_entry(
            "sign_changing_beta_neg_ln2",
            -LN_2,
            "K = -f''/f for f = t exp(-β t²/(1+t²)), β = -ln 2; c = 2π(1 - e^-β) = -2π",
        ),
        GalleryEntry {
            name: "moment_boundary",
            profile: CurvatureProfile::power_decay(-1.0, 2.0).expect("valid tail"),
            oracle: Oracle {
                f_at: [1.0, 10.0]
                    .iter()
                    .map(|&t| (t, inverse_square_warping(t)))
                    .collect(),
                total_curvature: Some(CurvatureOracle::NegativeInfinite),
                slope: Some(LimitOracle::Divergent),
                m_prime_inf: Some(LimitOracle::Divergent),
                first_zero: None,
            },
            notes: "K = -1/(1+t)^2: ∫ t K dt diverges logarithmically",
        },
    ]
}

pub fn entry_by_name(name: &str) -> Result<GalleryEntry> {
    list_gallery()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Lookup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(entry_by_name("flat").unwrap().name, "flat");
        let tail = entry_by_name("abresch_tail").unwrap();
        assert_eq!(tail.profile.tail(), TailModel::PowerDecay { a: -6.0, p: 4.0 });
        assert!(matches!(entry_by_name("nope"), Err(Error::Lookup(_))));
    }

    #[test]
    fn names_are_unique() {
        let names: Vec<_> = list_gallery().iter().map(|e| e.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn beta_profile_changes_sign() {
        let k = sign_changing_beta(LN_2);
        assert!((k.eval(0.0).unwrap() - 6.0 * LN_2).abs() < 1e-15);
        assert!(k.eval(10.0).unwrap() < 0.0);
        assert!(k.is_continuous());
    }

    #[test]
    fn beta_curvature_matches_finite_differences() {
        // -f''/f by a fourth-order central difference of the closed form
        for beta in [LN_2, -LN_2] {
            let expr = beta_curvature_expr(beta);
            for &t in &[0.3, 1.0, 1.7, 4.0, 12.0] {
                let h = 1e-3;
                let f = |x: f64| beta_warping(beta, x);
                let fpp = (-f(t + 2.0 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h)
                    - f(t - 2.0 * h))
                    / (12.0 * h * h);
                let k = -fpp / f(t);
                assert!((k - expr.eval(t)).abs() < 1e-7, "β={beta} t={t}: {k} vs {}", expr.eval(t));
            }
        }
    }

    #[test]
    fn closed_form_warpings_solve_their_equations() {
        // f'' + K f = 0, f(0) = 0, f'(0) = 1 checked by finite differences
        let h = 1e-3;
        type Curve<'a> = &'a dyn Fn(f64) -> f64;
        let checks: [(Curve, Curve); 2] = [
            (&|t| quartic_tail_warping(-6.0, t), &|t| -6.0 / (1.0 + t).powi(4)),
            (&inverse_square_warping, &|t| -1.0 / (1.0 + t).powi(2)),
        ];
        for (f, k) in checks {
            assert!(f(0.0).abs() < 1e-15);
            assert!(((f(h) - f(-h)) / (2.0 * h) - 1.0).abs() < 1e-5);
            for &t in &[0.5, 2.0, 7.0] {
                let fpp = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
                assert!((fpp + k(t) * f(t)).abs() < 1e-5 * f(t).abs().max(1.0));
            }
        }
    }
}
