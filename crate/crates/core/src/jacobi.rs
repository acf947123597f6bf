//! Jacobi initial value problems `f'' + K f = 0`, `f(0) = 0`, `f'(0) = 1`.
//!
//! Integration uses the Dormand–Prince 5(4) pair with a PI step-size
//! controller. Steps never straddle a profile breakpoint; the integrator
//! restarts on each analytic piece. Accepted steps are stored as nodes
//! carrying `(f, f', f'')`, and the dense output is the quintic Hermite
//! interpolant through consecutive nodes.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::profile::CurvatureProfile;

/// Solutions whose magnitude passes this are treated as blown up.
pub const BLOW_UP: f64 = 1e200;
const MAX_STEPS: usize = 5_000_000;
const ZERO_TOL: f64 = 1e-12;

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// PI controller (Hairer & Wanner defaults).
const SAFETY: f64 = 0.9;
const BETA: f64 = 0.04;
const EXPO: f64 = 0.2 - BETA * 0.75;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// Accepted integration node. `fpp_left`/`fpp_right` are the one-sided
/// second derivatives; they differ only where the profile jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub t: f64,
    pub f: f64,
    pub fp: f64,
    pub fpp_left: f64,
    pub fpp_right: f64,
}

/// Dense solution `(f, f')` of a Jacobi initial value problem.
#[derive(Debug, Clone)]
pub struct WarpingSolution {
    profile: CurvatureProfile,
    t_end: f64,
    tol: f64,
    nodes: Vec<Node>,
    first_zero: Option<f64>,
    blow_up: Option<f64>,
}

type State = [f64; 2];

#[inline]
fn rhs(k: f64, y: State) -> State {
    [y[1], -k * y[0]]
}

#[inline]
fn axpy(y: State, h: f64, terms: &[(f64, State)]) -> State {
    let mut out = y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Quintic Hermite interpolation on `[a.t, b.t]`: returns `(f, f')`.
fn hermite(a: &Node, b: &Node, t: f64) -> (f64, f64) {
    let h = b.t - a.t;
    if h <= 0.0 {
        return (a.f, a.fp);
    }
    let s = (t - a.t) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    let h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    let h3 = 1.0 - h0;
    let h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    let h5 = 0.5 * (s3 - 2.0 * s4 + s5);
    let d0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    let d1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    let d2 = 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4);
    let d3 = -d0;
    let d4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    let d5 = 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4);
    let hh = h * h;
    let f = h0 * a.f + h * h1 * a.fp + hh * h2 * a.fpp_right + h3 * b.f + h * h4 * b.fp
        + hh * h5 * b.fpp_left;
    let fp = (d0 * a.f + h * d1 * a.fp + hh * d2 * a.fpp_right + d3 * b.f + h * d4 * b.fp
        + hh * d5 * b.fpp_left)
        / h;
    (f, fp)
}

/// Solve `f'' + K f = 0`, `f(0) = 0`, `f'(0) = 1` on `[0, t_end]`.
///
/// Stops early at the first zero of `f` (located to `1e-12` in `t`) or
/// when `|f|` or `|f'|` exceeds [`BLOW_UP`].
pub fn solve(profile: &CurvatureProfile, t_end: f64, tol: f64) -> Result<WarpingSolution> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain(format!("t_end must be positive, got {t_end}")));
    }
    if !(1e-14..=1e-3).contains(&tol) {
        return Err(Error::Domain(format!("tol must lie in [1e-14, 1e-3], got {tol}")));
    }

    let mut nodes = vec![Node {
        t: 0.0,
        f: 0.0,
        fp: 1.0,
        fpp_left: 0.0,
        fpp_right: 0.0,
    }];
    let mut first_zero = None;
    let mut blow_up = None;

    let mut t = 0.0;
    let mut y: State = [0.0, 1.0];
    let mut h = (1e-3f64).min(t_end);
    let mut err_old: f64 = 1e-4;
    let mut steps = 0usize;
    let mut piece = profile.piece_index(0.0);

    'pieces: loop {
        let piece_end = profile.piece_end(piece).min(t_end);
        let kval = |s: f64| profile.eval_piece(piece, s);
        nodes.last_mut().unwrap().fpp_right = -kval(t) * y[0];
        let mut k1 = rhs(kval(t), y);

        while t < piece_end {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::Integration {
                    t,
                    reason: "step budget exhausted".into(),
                });
            }
            let mut landing = false;
            if t + h >= piece_end - 1e-14 * piece_end.abs().max(1.0) {
                h = piece_end - t;
                landing = true;
            }
            let kmax = kval(t).max(kval(t + 0.5 * h)).max(kval(t + h));
            if kmax > 0.0 {
                // at most a quarter oscillation per step, so zeros cannot be skipped
                let cap = 0.5 * PI / kmax.sqrt();
                if h > cap {
                    h = cap;
                    landing = false;
                }
            }
            if h <= 16.0 * f64::EPSILON * t.abs().max(1.0) {
                return Err(Error::Integration {
                    t,
                    reason: "step size underflow".into(),
                });
            }

            let y2 = axpy(y, h, &[(A21, k1)]);
            let k2 = rhs(kval(t + C2 * h), y2);
            let y3 = axpy(y, h, &[(A31, k1), (A32, k2)]);
            let k3 = rhs(kval(t + C3 * h), y3);
            let y4 = axpy(y, h, &[(A41, k1), (A42, k2), (A43, k3)]);
            let k4 = rhs(kval(t + C4 * h), y4);
            let y5 = axpy(y, h, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)]);
            let k5 = rhs(kval(t + C5 * h), y5);
            let y6 = axpy(y, h, &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)]);
            let t_new = if landing { piece_end } else { t + h };
            let k6 = rhs(kval(t_new), y6);
            let y_new = axpy(y, h, &[(A71, k1), (A73, k3), (A74, k4), (A75, k5), (A76, k6)]);
            let k7 = rhs(kval(t_new), y_new);

            let mut sq = 0.0;
            for i in 0..2 {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = tol + tol * y[i].abs().max(y_new[i].abs());
                sq += (e / sc).powi(2);
            }
            let err = (0.5 * sq).sqrt();
            if !err.is_finite() {
                h *= FAC_MIN;
                continue;
            }

            if err <= 1.0 {
                let fac = (err.powf(EXPO) / err_old.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
                err_old = err.max(1e-4);
                let fpp = -kval(t_new) * y_new[0];
                let node = Node {
                    t: t_new,
                    f: y_new[0],
                    fp: y_new[1],
                    fpp_left: fpp,
                    fpp_right: fpp,
                };
                if y_new[0] <= 0.0 {
                    let prev = *nodes.last().unwrap();
                    let z = locate_zero(&prev, &node);
                    let (fz, fpz) = hermite(&prev, &node, z);
                    let fppz = -kval(z) * fz;
                    nodes.push(Node {
                        t: z,
                        f: fz,
                        fp: fpz,
                        fpp_left: fppz,
                        fpp_right: fppz,
                    });
                    first_zero = Some(z);
                    break 'pieces;
                }
                nodes.push(node);
                t = t_new;
                y = y_new;
                k1 = k7;
                if y[0].abs() > BLOW_UP || y[1].abs() > BLOW_UP {
                    blow_up = Some(t);
                    break 'pieces;
                }
                h /= fac;
            } else {
                h /= (err.powf(EXPO) / SAFETY).min(1.0 / FAC_MIN);
            }
        }

        if t >= t_end {
            break;
        }
        piece += 1;
    }

    Ok(WarpingSolution {
        profile: profile.clone(),
        t_end,
        tol,
        nodes,
        first_zero,
        blow_up,
    })
}

/// First zero of the interpolant on `(a.t, b.t]`, given `b.f <= 0`.
fn locate_zero(a: &Node, b: &Node) -> f64 {
    const SCAN: usize = 32;
    let h = b.t - a.t;
    let mut lo = a.t;
    let mut hi = b.t;
    for j in 1..=SCAN {
        let s = a.t + h * j as f64 / SCAN as f64;
        if hermite(a, b, s).0 <= 0.0 {
            hi = s;
            break;
        }
        lo = s;
    }
    for _ in 0..64 {
        if hi - lo <= ZERO_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if hermite(a, b, mid).0 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `m'' + K₋ m = 0` with the same initial data: the warping function of
/// the surface built from the negative part of `K`.
pub fn solve_m(profile: &CurvatureProfile, t_end: f64, tol: f64) -> Result<WarpingSolution> {
    let sol = solve(&profile.negative_part(), t_end, tol)?;
    if let Some(t) = sol.first_zero {
        return Err(Error::Integration {
            t,
            reason: "m vanished although K₋ <= 0 makes it convex".into(),
        });
    }
    Ok(sol)
}

impl WarpingSolution {
    pub fn profile(&self) -> &CurvatureProfile {
        &self.profile
    }

    /// Requested end of the integration window.
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn first_zero(&self) -> Option<f64> {
        self.first_zero
    }

    /// Where integration stopped because the solution exceeded [`BLOW_UP`].
    pub fn blow_up(&self) -> Option<f64> {
        self.blow_up
    }

    /// Last time covered by the dense output.
    pub fn reached(&self) -> f64 {
        self.nodes.last().map_or(0.0, |n| n.t)
    }

    /// `(f(t), f'(t))` from the dense output.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        let end = self.reached();
        if !(t >= 0.0 && t <= end) {
            return Err(Error::Domain(format!(
                "t = {t} outside solution window [0, {end}]"
            )));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> (f64, f64) {
        let n = self.nodes.len();
        if n == 1 {
            return (self.nodes[0].f, self.nodes[0].fp);
        }
        let i = self
            .nodes
            .partition_point(|node| node.t <= t)
            .clamp(1, n - 1);
        hermite(&self.nodes[i - 1], &self.nodes[i], t)
    }

    pub fn f(&self, t: f64) -> Result<f64> {
        self.eval(t).map(|(f, _)| f)
    }

    pub fn fp(&self, t: f64) -> Result<f64> {
        self.eval(t).map(|(_, fp)| fp)
    }

    /// Node times inside `[a, b]`, bracketed by `a` and `b`, for use as a
    /// quadrature partition.
    pub fn partition(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts = vec![a];
        pts.extend(self.nodes.iter().map(|n| n.t).filter(|&t| t > a && t < b));
        pts.push(b);
        pts
    }
}
