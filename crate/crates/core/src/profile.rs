//! Radial curvature functions `K(t)` on `[0, ∞)`.
//!
//! A profile is a list of analytic pieces (polynomials or quotients of
//! polynomials in `t`) covering `[0, T_tail)`, followed by one of three
//! closed-form tail models. The tail models are restricted so that the
//! convergence of improper integrals against `K` is decidable exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for continuity at breakpoints (unit floor).
const CONTINUITY_TOL: f64 = 1e-12;
/// Absolute width at which sign-change bisection stops.
const ROOT_TOL: f64 = 1e-13;
const ROOT_MAX_ITER: usize = 64;

/// Evaluate `c[0] + c[1] t + ...` by Horner's rule.
pub(crate) fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

fn trimmed(coeffs: &[f64]) -> &[f64] {
    let len = coeffs
        .iter()
        .rposition(|&c| c != 0.0)
        .map_or(0, |i| i + 1);
    &coeffs[..len]
}

fn bisect_root(p: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut p_lo = p(lo);
    for _ in 0..ROOT_MAX_ITER {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let p_mid = p(mid);
        if p_mid == 0.0 {
            return mid;
        }
        if (p_mid > 0.0) == (p_lo > 0.0) {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Points in the open interval `(a, b)` where the polynomial may change
/// sign. Every sign change is listed; exact zeros at critical points are
/// included even when tangential, which only adds a harmless split.
///
/// Roots are isolated between consecutive critical points (found
/// recursively from the derivative) and refined by bisection.
pub(crate) fn sign_changes(coeffs: &[f64], a: f64, b: f64) -> Vec<f64> {
    let c = trimmed(coeffs);
    if c.len() <= 1 || a >= b {
        return Vec::new();
    }
    let p = |t: f64| horner(c, t);
    let mut pts = vec![a];
    pts.extend(sign_changes(&derivative(c), a, b));
    pts.push(b);

    let mut roots = Vec::new();
    for (i, w) in pts.windows(2).enumerate() {
        let (l, r) = (w[0], w[1]);
        // an exact zero at an interior critical point may hide an odd-order root
        if i > 0 && p(l) == 0.0 {
            roots.push(l);
        }
        let (pl, pr) = (p(l), p(r));
        if pl != 0.0 && pr != 0.0 && (pl > 0.0) != (pr > 0.0) {
            roots.push(bisect_root(p, l, r));
        }
    }
    roots.retain(|&r| r > a && r < b);
    roots.dedup_by(|x, y| (*x - *y).abs() <= ROOT_TOL);
    roots
}

/// An analytic piece of a profile, in absolute `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Coefficients in ascending powers of `t`; empty means zero.
    Poly(Vec<f64>),
    Rational { num: Vec<f64>, den: Vec<f64> },
}

impl Expr {
    pub fn zero() -> Self {
        Expr::Poly(Vec::new())
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Poly(c) => horner(c, t),
            Expr::Rational { num, den } => horner(num, t) / horner(den, t),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Expr::Poly(c) => c.iter().all(|&x| x == 0.0),
            Expr::Rational { num, .. } => num.iter().all(|&x| x == 0.0),
        }
    }

    fn numerator(&self) -> &[f64] {
        match self {
            Expr::Poly(c) => c,
            Expr::Rational { num, .. } => num,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub expr: Expr,
}

/// Closed-form behaviour of `K` beyond `T_tail`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TailModel {
    Zero,
    Constant { kappa: f64 },
    /// `a / (1 + t)^p`
    #[serde(rename = "power")]
    PowerDecay { a: f64, p: f64 },
}

impl TailModel {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TailModel::Zero => 0.0,
            TailModel::Constant { kappa } => kappa,
            TailModel::PowerDecay { a, p } => a / (1.0 + t).powf(p),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            TailModel::Zero => Ok(()),
            TailModel::Constant { kappa } if kappa.is_finite() => Ok(()),
            TailModel::PowerDecay { a, p } if a.is_finite() && p.is_finite() && p > 0.0 => Ok(()),
            TailModel::PowerDecay { p, .. } if p <= 0.0 => Err(Error::Profile(format!(
                "power-decay exponent must be positive, got {p}"
            ))),
            _ => Err(Error::Profile("tail parameters must be finite".into())),
        }
    }

    /// Tail with every value replaced by `min(value, 0)` (or `max` when
    /// `keep_negative` is false). Tails never change sign.
    fn clipped(&self, keep_negative: bool) -> TailModel {
        let sign = match *self {
            TailModel::Zero => 0.0,
            TailModel::Constant { kappa } => kappa,
            TailModel::PowerDecay { a, .. } => a,
        };
        let keep = if keep_negative { sign < 0.0 } else { sign > 0.0 };
        if keep {
            *self
        } else {
            TailModel::Zero
        }
    }

    /// Sign of the tail: -1, 0 or 1.
    pub fn sign(&self) -> f64 {
        let v = match *self {
            TailModel::Zero => 0.0,
            TailModel::Constant { kappa } => kappa,
            TailModel::PowerDecay { a, .. } => a,
        };
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    }
}

/// Convergence of `∫^∞ t K₋(t) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentClass {
    FiniteMoment,
    DivergentMoment,
}

/// Piecewise-analytic radial curvature function.
///
/// Immutable after construction. Segments are contiguous, start at 0 and
/// end at `t_tail`; the function may jump at breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileSpec", into = "ProfileSpec")]
pub struct CurvatureProfile {
    segments: Vec<Segment>,
    tail: TailModel,
    t_tail: f64,
}

impl CurvatureProfile {
    /// Build and validate a profile. The tail starts where the last
    /// segment ends (at 0 when there are no segments).
    ///
    /// Jumps at breakpoints are accepted (see [`Self::jumps`]); the
    /// warping function stays `C¹` across them.
    pub fn new(segments: Vec<Segment>, tail: TailModel) -> Result<Self> {
        tail.validate()?;
        let mut cursor = 0.0;
        for (i, seg) in segments.iter().enumerate() {
            if !(seg.start.is_finite() && seg.end.is_finite()) {
                return Err(Error::Profile(format!("segment {i} has non-finite bounds")));
            }
            if seg.start != cursor {
                return Err(Error::Profile(format!(
                    "segment {i} starts at {} but previous coverage ends at {cursor}",
                    seg.start
                )));
            }
            if seg.end <= seg.start {
                return Err(Error::Profile(format!("segment {i} is empty or reversed")));
            }
            let coeffs_ok = match &seg.expr {
                Expr::Poly(c) => c.iter().all(|x| x.is_finite()),
                Expr::Rational { num, den } => {
                    num.iter().chain(den).all(|x| x.is_finite())
                }
            };
            if !coeffs_ok {
                return Err(Error::Profile(format!("segment {i} has non-finite coefficients")));
            }
            if let Expr::Rational { den, .. } = &seg.expr {
                let d0 = horner(den, seg.start);
                let d1 = horner(den, seg.end);
                let poles = sign_changes(den, seg.start, seg.end);
                if d0 == 0.0 || d1 == 0.0 || !poles.is_empty() || (d0 > 0.0) != (d1 > 0.0) {
                    return Err(Error::Profile(format!(
                        "segment {i} denominator vanishes on [{}, {}]",
                        seg.start, seg.end
                    )));
                }
            }
            cursor = seg.end;
        }
        Ok(CurvatureProfile {
            segments,
            tail,
            t_tail: cursor,
        })
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(kappa: f64) -> Self {
        let tail = if kappa == 0.0 {
            TailModel::Zero
        } else {
            TailModel::Constant { kappa }
        };
        CurvatureProfile {
            segments: Vec::new(),
            tail,
            t_tail: 0.0,
        }
    }

    /// Pure tail `a / (1 + t)^p` on all of `[0, ∞)`.
    pub fn power_decay(a: f64, p: f64) -> Result<Self> {
        Self::new(Vec::new(), TailModel::PowerDecay { a, p })
    }

    /// Breakpoints where the left and right values differ by more than
    /// `1e-12` relative (unit floor), with the jump size.
    pub fn jumps(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            let l = seg.expr.eval(seg.end);
            let r = self.eval_piece(i + 1, seg.end);
            if (l - r).abs() > CONTINUITY_TOL * l.abs().max(r.abs()).max(1.0) {
                out.push((seg.end, r - l));
            }
        }
        out
    }

    pub fn is_continuous(&self) -> bool {
        self.jumps().is_empty()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    pub fn t_tail(&self) -> f64 {
        self.t_tail
    }

    /// Number of analytic pieces, counting the tail as the last one.
    pub fn piece_count(&self) -> usize {
        self.segments.len() + 1
    }

    /// Index of the piece containing `t` (half-open on the right).
    pub fn piece_index(&self, t: f64) -> usize {
        if t >= self.t_tail {
            return self.segments.len();
        }
        self.segments.partition_point(|s| s.end <= t)
    }

    /// Right end of piece `i` (infinity for the tail).
    pub fn piece_end(&self, i: usize) -> f64 {
        self.segments.get(i).map_or(f64::INFINITY, |s| s.end)
    }

    /// Evaluate piece `i`'s expression at `t`, even outside its interval.
    pub fn eval_piece(&self, i: usize, t: f64) -> f64 {
        match self.segments.get(i) {
            Some(s) => s.expr.eval(t),
            None => self.tail.eval(t),
        }
    }

    /// Interior breakpoints, including `t_tail` when positive.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments.iter().map(|s| s.end).collect()
    }

    /// `K(t)`; fails for negative or non-finite `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 || t.is_infinite() {
            return Err(Error::Domain(format!("curvature evaluated at t = {t}")));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        self.eval_piece(self.piece_index(t), t)
    }

    /// Pointwise `min(K, 0)`.
    pub fn negative_part(&self) -> CurvatureProfile {
        self.clipped(true)
    }

    /// Pointwise `max(K, 0)`.
    pub fn positive_part(&self) -> CurvatureProfile {
        self.clipped(false)
    }

    fn clipped(&self, keep_negative: bool) -> CurvatureProfile {
        let mut out: Vec<Segment> = Vec::new();
        let mut push = |start: f64, end: f64, expr: Expr| {
            if let Some(prev) = out.last_mut() {
                if prev.expr.is_zero() && expr.is_zero() {
                    prev.end = end;
                    return;
                }
            }
            out.push(Segment { start, end, expr });
        };
        for seg in &self.segments {
            let mut cuts = vec![seg.start];
            cuts.extend(sign_changes(seg.expr.numerator(), seg.start, seg.end));
            cuts.push(seg.end);
            for w in cuts.windows(2) {
                let mid = seg.expr.eval(0.5 * (w[0] + w[1]));
                let keep = if keep_negative { mid < 0.0 } else { mid > 0.0 };
                let expr = if keep { seg.expr.clone() } else { Expr::zero() };
                push(w[0], w[1], expr);
            }
        }
        let tail = self.tail.clipped(keep_negative);
        // a trailing zero segment followed by a zero tail is just tail
        let mut t_tail = self.t_tail;
        if tail == TailModel::Zero {
            while out.last().is_some_and(|s| s.expr.is_zero()) {
                let s = out.pop().unwrap();
                t_tail = s.start;
            }
        }
        CurvatureProfile {
            segments: out,
            tail,
            t_tail,
        }
    }

    /// Decide convergence of `∫^∞ t K₋(t) dt` from the tail model.
    pub fn tail_moment_class(&self) -> MomentClass {
        match self.tail.clipped(true) {
            TailModel::Zero => MomentClass::FiniteMoment,
            TailModel::Constant { .. } => MomentClass::DivergentMoment,
            TailModel::PowerDecay { p, .. } if p > 2.0 => MomentClass::FiniteMoment,
            TailModel::PowerDecay { .. } => MomentClass::DivergentMoment,
        }
    }
}

/// JSON form of a segment: either `[t_start, t_end, c0, c1, ...]`
/// (polynomial, ascending powers) or
/// `{"start": .., "end": .., "num": [..], "den": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SegmentSpec {
    Poly(Vec<f64>),
    Rational {
        start: f64,
        end: f64,
        num: Vec<f64>,
        den: Vec<f64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileSpec {
    #[serde(default)]
    pub segments: Vec<SegmentSpec>,
    pub tail: TailModel,
}

impl TryFrom<ProfileSpec> for CurvatureProfile {
    type Error = Error;

    fn try_from(spec: ProfileSpec) -> Result<Self> {
        let segments = spec
            .segments
            .into_iter()
            .enumerate()
            .map(|(i, s)| match s {
                SegmentSpec::Poly(v) if v.len() >= 2 => Ok(Segment {
                    start: v[0],
                    end: v[1],
                    expr: Expr::Poly(v[2..].to_vec()),
                }),
                SegmentSpec::Poly(_) => Err(Error::Profile(format!(
                    "segment {i} needs at least [t_start, t_end]"
                ))),
                SegmentSpec::Rational {
                    start,
                    end,
                    num,
                    den,
                } => Ok(Segment {
                    start,
                    end,
                    expr: Expr::Rational { num, den },
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        CurvatureProfile::new(segments, spec.tail)
    }
}

impl From<CurvatureProfile> for ProfileSpec {
    fn from(p: CurvatureProfile) -> Self {
        let segments = p
            .segments
            .into_iter()
            .map(|s| match s.expr {
                Expr::Poly(c) => {
                    let mut v = vec![s.start, s.end];
                    v.extend(c);
                    SegmentSpec::Poly(v)
                }
                Expr::Rational { num, den } => SegmentSpec::Rational {
                    start: s.start,
                    end: s.end,
                    num,
                    den,
                },
            })
            .collect();
        ProfileSpec {
            segments,
            tail: p.tail,
        }
    }
}
