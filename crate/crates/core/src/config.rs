//! Run configuration: a flat key=value file with dotted keys
//! (`model.alpha=0.05`), overridable entry by entry (flags win).

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Horizon, ModelParams};
use crate::montecarlo::DEFAULT_Z_THRESHOLD;
use crate::simulation::JumpSpec;

/// Everything a CLI run needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: ModelParams,
    pub jumps: JumpSpec,
    pub horizon: Horizon,
    pub n: u64,
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub z_threshold: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelParams {
                alpha: 0.05,
                sigma: 0.2,
                lambda: 1.0,
                nu: 0.01,
                tau2: 0.04,
                p0: 100.0,
            },
            jumps: JumpSpec::Gaussian,
            horizon: Horizon { t_obs: 6.0, s_target: 9.0 },
            n: 100_000,
            master_seed: 42,
            output_dir: PathBuf::from("out"),
            z_threshold: DEFAULT_Z_THRESHOLD,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| Error::Parse(format!("key `{key}`: bad value `{value}`: {e}")))
}

impl RunConfig {
    /// Apply one `key=value` entry. Used for config-file lines and for
    /// command-line overrides alike.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "model.alpha" => self.model.alpha = parse_num(key, value)?,
            "model.sigma" => self.model.sigma = parse_num(key, value)?,
            "model.lambda" => self.model.lambda = parse_num(key, value)?,
            "model.nu" => self.model.nu = parse_num(key, value)?,
            "model.tau2" => self.model.tau2 = parse_num(key, value)?,
            "model.p0" => self.model.p0 = parse_num(key, value)?,
            "jumps.kind" => self.jumps = value.parse()?,
            "horizon.t_obs" => self.horizon.t_obs = parse_num(key, value)?,
            "horizon.s_target" => self.horizon.s_target = parse_num(key, value)?,
            "n" => self.n = parse_num(key, value)?,
            "master_seed" => self.master_seed = parse_num(key, value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "z_threshold" => self.z_threshold = parse_num(key, value)?,
            other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Parse config text on top of the defaults. Blank lines and `#`
    /// comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value, got `{line}`", idx + 1)))?;
            config.set(key.trim(), value.trim())?;
        }
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.horizon.validate()?;
        if !self.z_threshold.is_finite() || self.z_threshold <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "z_threshold",
                reason: format!("must be > 0, got {}", self.z_threshold),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let config = RunConfig::default();
        assert!(config.validate().is_ok());
        assert_eq!(config.n, 100_000);
    }

    #[test]
    fn parses_dotted_keys_and_comments() {
        let text = "\
# example run
model.alpha = 0.1
model.lambda=2
jumps.kind=two_point
horizon.t_obs=4
horizon.s_target=10
n=5000
master_seed=7
output_dir=results
z_threshold=3.5
";
        let config = RunConfig::parse(text).unwrap();
        assert_eq!(config.model.alpha, 0.1);
        assert_eq!(config.model.lambda, 2.0);
        assert_eq!(config.jumps, JumpSpec::TwoPoint);
        assert_eq!(config.horizon.t_obs, 4.0);
        assert_eq!(config.horizon.s_target, 10.0);
        assert_eq!(config.n, 5000);
        assert_eq!(config.master_seed, 7);
        assert_eq!(config.output_dir, PathBuf::from("results"));
        assert_eq!(config.z_threshold, 3.5);
        // untouched keys keep their defaults
        assert_eq!(config.model.sigma, 0.2);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(RunConfig::parse("model.theta=1\n").is_err());
        assert!(RunConfig::parse("model.alpha\n").is_err());
        assert!(RunConfig::parse("model.alpha=zebra\n").is_err());
        assert!(RunConfig::parse("jumps.kind=levy\n").is_err());
    }

    #[test]
    fn overrides_win_over_file_values() {
        let mut config = RunConfig::parse("model.alpha=0.1\n").unwrap();
        config.set("model.alpha", "0.2").unwrap();
        assert_eq!(config.model.alpha, 0.2);
    }

    #[test]
    fn validate_flags_bad_nested_values() {
        let mut config = RunConfig::default();
        config.set("model.sigma", "-1").unwrap();
        assert!(config.validate().is_err());
        let mut config = RunConfig::default();
        config.set("horizon.s_target", "2").unwrap();
        assert!(config.validate().is_err());
    }
}
