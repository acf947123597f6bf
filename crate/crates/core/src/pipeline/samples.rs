//! Externally measured ball volumes `vol B_t(p)` and the Bishop–Gromov
//! ratio check against the model space.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::asymptotics::LimitEstimate;
use crate::error::{Error, Result};
use crate::model_space::ModelSpace;

/// Slack for the monotonicity and `r ≤ 1` checks.
pub const MONOTONE_SLACK: f64 = 1e-9;
/// Number of trailing ratios averaged for the limit estimate.
pub const TAIL_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeSamples {
    pub n: usize,
    /// `(t, vol)` with `t` strictly increasing and positive, `vol > 0`.
    pub rows: Vec<(f64, f64)>,
}

#[derive(Debug, Deserialize)]
struct Row {
    t: f64,
    vol: f64,
}

impl VolumeSamples {
    pub fn new(n: usize, rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Ingest {
                row: 0,
                msg: "no samples".into(),
            });
        }
        let mut prev = 0.0;
        for (i, &(t, vol)) in rows.iter().enumerate() {
            let row = i + 1;
            if !(t.is_finite() && vol.is_finite()) {
                return Err(Error::Ingest {
                    row,
                    msg: "non-finite value".into(),
                });
            }
            if t <= prev {
                return Err(Error::Ingest {
                    row,
                    msg: format!("t = {t} does not increase (previous {prev})"),
                });
            }
            if vol <= 0.0 {
                return Err(Error::Ingest {
                    row,
                    msg: format!("volume {vol} is not positive"),
                });
            }
            prev = t;
        }
        Ok(VolumeSamples { n, rows })
    }

    /// Parse CSV with header `t,vol`. Row numbers in errors count data
    /// rows from 1.
    pub fn from_reader(reader: impl Read, n: usize) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Ingest {
                row: 0,
                msg: e.to_string(),
            })?
            .clone();
        if headers.iter().collect::<Vec<_>>() != ["t", "vol"] {
            return Err(Error::Ingest {
                row: 0,
                msg: format!("expected header `t,vol`, got `{}`", headers.iter().collect::<Vec<_>>().join(",")),
            });
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.deserialize::<Row>().enumerate() {
            let rec = rec.map_err(|e| Error::Ingest {
                row: i + 1,
                msg: e.to_string(),
            })?;
            rows.push((rec.t, rec.vol));
        }
        Self::new(n, rows)
    }
}

/// Read and validate a samples file.
pub fn ingest_samples(path: &Path, n: usize) -> Result<VolumeSamples> {
    let file = std::fs::File::open(path).map_err(|e| Error::Ingest {
        row: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    VolumeSamples::from_reader(file, n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    /// `vol B_t(p) / vol B_t(õ)` at each sample.
    pub ratios: Vec<f64>,
    pub monotone_ok: bool,
    pub ratio_limit: LimitEstimate,
    pub warnings: Vec<String>,
}

/// Mean and spread (max - min) of the last `min(TAIL_WINDOW, len)` values.
pub(crate) fn tail_average(values: &[f64]) -> (f64, f64) {
    let k = TAIL_WINDOW.min(values.len());
    let tail = &values[values.len() - k..];
    let mean = tail.iter().sum::<f64>() / k as f64;
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    (mean, hi - lo)
}

/// Bishop–Gromov check: the ratio to the model volume must be
/// nonincreasing and at most 1.
pub fn bg_ratio_check(samples: &VolumeSamples, ms: &ModelSpace) -> Result<RatioCheck> {
    if samples.n != ms.n() {
        return Err(Error::Domain(format!(
            "samples are {}-dimensional but the model space is {}-dimensional",
            samples.n,
            ms.n()
        )));
    }
    let ratios = samples
        .rows
        .iter()
        .map(|&(t, vol)| ms.ball_volume(t).map(|model| vol / model))
        .collect::<Result<Vec<_>>>()?;

    let mut warnings = Vec::new();
    let increase = ratios
        .windows(2)
        .zip(&samples.rows[1..])
        .find(|(w, _)| w[1] > w[0] + MONOTONE_SLACK)
        .map(|(_, &(t, _))| t);
    let above_one = ratios
        .iter()
        .zip(&samples.rows)
        .find(|(&r, _)| r > 1.0 + MONOTONE_SLACK)
        .map(|(_, &(t, _))| t);
    if let Some(t) = increase {
        warnings.push(format!(
            "volume ratio vol B_t(p)/vol B_t(õ) increases at t = {t}: the data contradict the declared radial curvature lower bound"
        ));
    }
    if let Some(t) = above_one {
        warnings.push(format!(
            "volume ratio exceeds 1 at t = {t}: the data contradict the declared radial curvature lower bound"
        ));
    }
    let (value, err) = tail_average(&ratios);
    Ok(RatioCheck {
        monotone_ok: increase.is_none() && above_one.is_none(),
        ratios,
        ratio_limit: LimitEstimate::Finite { value, err },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::solve;
    use crate::profile::CurvatureProfile;
    use std::f64::consts::PI;

    fn flat_plane() -> ModelSpace {
        ModelSpace::new(2, solve(&CurvatureProfile::zero(), 10.0, 1e-10).unwrap()).unwrap()
    }

    #[test]
    fn parses_flat_disks() {
        let csv = format!("t,vol\n1,{}\n2,{}\n3,{}\n", PI, 4.0 * PI, 9.0 * PI);
        let s = VolumeSamples::from_reader(csv.as_bytes(), 2).unwrap();
        assert_eq!(s.rows.len(), 3);
    }

    #[test]
    fn ingest_errors_name_the_row() {
        let err = VolumeSamples::from_reader("t,vol\n1,1\n3,2\n2,3\n".as_bytes(), 2).unwrap_err();
        assert!(matches!(err, Error::Ingest { row: 3, .. }), "{err}");
        let err = VolumeSamples::from_reader("t,vol\n1,1\n2,-2\n".as_bytes(), 2).unwrap_err();
        assert!(matches!(err, Error::Ingest { row: 2, .. }));
        let err = VolumeSamples::from_reader("t,vol\n1,1\n2,abc\n".as_bytes(), 2).unwrap_err();
        assert!(matches!(err, Error::Ingest { row: 2, .. }));
        assert!(VolumeSamples::from_reader("".as_bytes(), 2).is_err());
        assert!(VolumeSamples::from_reader("t,vol\n".as_bytes(), 2).is_err());
        assert!(VolumeSamples::from_reader("r,v\n1,1\n".as_bytes(), 2).is_err());
    }

    #[test]
    fn exact_model_volumes_have_unit_ratio() {
        let ms = flat_plane();
        let rows: Vec<_> = (1..=6).map(|i| (i as f64, PI * (i * i) as f64)).collect();
        let s = VolumeSamples::new(2, rows.clone()).unwrap();
        let check = bg_ratio_check(&s, &ms).unwrap();
        assert!(check.monotone_ok);
        assert!(check.ratios.iter().all(|r| (r - 1.0).abs() < 1e-12));
        assert!((check.ratio_limit.value().unwrap() - 1.0).abs() < 1e-12);

        let half = VolumeSamples::new(2, rows.iter().map(|&(t, v)| (t, 0.5 * v)).collect()).unwrap();
        let check = bg_ratio_check(&half, &ms).unwrap();
        assert!((check.ratio_limit.value().unwrap() - 0.5).abs() < 1e-12);
        assert!(check.ratio_limit.err().unwrap() < 1e-12);
    }

    #[test]
    fn increasing_ratio_is_flagged() {
        let ms = flat_plane();
        let s = VolumeSamples::new(2, vec![(1.0, 0.5 * PI), (2.0, 0.6 * 4.0 * PI)]).unwrap();
        let check = bg_ratio_check(&s, &ms).unwrap();
        assert!(!check.monotone_ok);
        assert_eq!(check.warnings.len(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        let s = VolumeSamples::new(3, vec![(1.0, 1.0)]).unwrap();
        assert!(matches!(bg_ratio_check(&s, &flat_plane()), Err(Error::Domain(_))));
    }
}
