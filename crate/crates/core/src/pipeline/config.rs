use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::CurvatureProfile;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_T_END: f64 = 4096.0;
/// Environment variable that overrides the configured tolerance.
pub const TOL_ENV: &str = "RADIALGEO_TOL";

/// Numerical options for a theorem evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Options {
    pub tol: f64,
    pub t_end: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: DEFAULT_TOL,
            t_end: DEFAULT_T_END,
        }
    }
}

impl Options {
    /// Apply `RADIALGEO_TOL` if set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(raw) = std::env::var(TOL_ENV) {
            self.tol = raw
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{TOL_ENV}={raw} is not a number")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-14..=1e-3).contains(&self.tol) {
            return Err(Error::Config(format!(
                "tol must lie in [1e-14, 1e-3], got {}",
                self.tol
            )));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!("t_end must be positive, got {}", self.t_end)));
        }
        Ok(())
    }
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_t_end() -> f64 {
    DEFAULT_T_END
}

/// `{"profile": {...}, "n": int, "tol": float, "t_end": float}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub profile: CurvatureProfile,
    pub n: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Config = serde_json::from_str(text)?;
        if config.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", config.n)));
        }
        config.options().validate()?;
        Ok(config)
    }

    /// Read a config file; `RADIALGEO_TOL` overrides `tol`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_json(&text)?;
        config.tol = config.options().with_env()?.tol;
        config.options().validate()?;
        Ok(config)
    }

    pub fn options(&self) -> Options {
        Options {
            tol: self.tol,
            t_end: self.t_end,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let c = Config::from_json(r#"{"profile": {"tail": {"kind": "zero"}}, "n": 3}"#).unwrap();
        assert_eq!(c.n, 3);
        assert_eq!(c.tol, DEFAULT_TOL);
        assert_eq!(c.t_end, DEFAULT_T_END);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::from_json(r#"{"profile": {"tail": {"kind": "zero"}}, "n": 1}"#).is_err());
        assert!(Config::from_json(
            r#"{"profile": {"tail": {"kind": "zero"}}, "n": 2, "tol": 0.1}"#
        )
        .is_err());
        assert!(Config::from_json(
            r#"{"profile": {"tail": {"kind": "zero"}}, "n": 2, "extra": 1}"#
        )
        .is_err());
        assert!(Config::from_json(r#"{"n": 2}"#).is_err());
    }
}
