//! Run configuration: defaults, flat `key = value` config files, flag
//! overrides, constraint validation, and the effective-config dump.
//!
//! Precedence is flags > file > defaults.

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use starcyl_core::suites::{RunParams, Tolerances};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed line {line} in config file: `{text}` (expected `key = value`)")]
    MalformedLine { line: usize, text: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
    #[error("constraint violation for `{key}`: {message}")]
    Constraint { key: String, message: String },
}

/// The resolved run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n_max: i64,
    pub k_trunc: i64,
    pub hbar_order: usize,
    pub band_limit: i64,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub route_tol: Option<f64>,
    pub anomaly_tol: Option<f64>,
    pub primary_tol: Option<f64>,
    pub zeta_abel_tol: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_max: 8,
            k_trunc: 64,
            hbar_order: 4,
            band_limit: 8,
            seed: 0,
            out_dir: PathBuf::from("out"),
            route_tol: None,
            anomaly_tol: None,
            primary_tol: None,
            zeta_abel_tol: None,
        }
    }
}

/// Optional per-key overrides coming from command-line flags.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n_max: Option<i64>,
    pub k_trunc: Option<i64>,
    pub hbar_order: Option<usize>,
    pub band_limit: Option<i64>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Resolve defaults, then the optional config file, then flag overrides,
    /// and validate the result.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(flags);
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Unreadable {
            path: path.to_path_buf(),
            source,
        })?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::MalformedLine {
                    line: idx + 1,
                    text: raw.to_string(),
                });
            };
            self.apply_kv(key.trim(), value.trim())?;
        }
        Ok(())
    }

    fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
            value.parse().map_err(|_| ConfigError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
            })
        }
        match key {
            "n_max" => self.n_max = parse(key, value)?,
            "k_trunc" => self.k_trunc = parse(key, value)?,
            "hbar_order" => self.hbar_order = parse(key, value)?,
            "band_limit" => self.band_limit = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "route_tol" => self.route_tol = Some(parse(key, value)?),
            "anomaly_tol" => self.anomaly_tol = Some(parse(key, value)?),
            "primary_tol" => self.primary_tol = Some(parse(key, value)?),
            "zeta_abel_tol" => self.zeta_abel_tol = Some(parse(key, value)?),
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    fn apply_overrides(&mut self, flags: &Overrides) {
        if let Some(v) = flags.n_max {
            self.n_max = v;
        }
        if let Some(v) = flags.k_trunc {
            self.k_trunc = v;
        }
        if let Some(v) = flags.hbar_order {
            self.hbar_order = v;
        }
        if let Some(v) = flags.band_limit {
            self.band_limit = v;
        }
        if let Some(v) = flags.seed {
            self.seed = v;
        }
        if let Some(v) = &flags.out_dir {
            self.out_dir = v.clone();
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_max < 1 {
            return Err(ConfigError::Constraint {
                key: "n_max".to_string(),
                message: format!("must be >= 1, got {}", self.n_max),
            });
        }
        if self.k_trunc < 4 * self.n_max {
            return Err(ConfigError::Constraint {
                key: "k_trunc".to_string(),
                message: format!(
                    "must be >= 4·n_max = {}, got {}",
                    4 * self.n_max,
                    self.k_trunc
                ),
            });
        }
        if self.hbar_order < 2 {
            return Err(ConfigError::Constraint {
                key: "hbar_order".to_string(),
                message: format!("must be >= 2, got {}", self.hbar_order),
            });
        }
        if self.band_limit < 1 {
            return Err(ConfigError::Constraint {
                key: "band_limit".to_string(),
                message: format!("must be >= 1, got {}", self.band_limit),
            });
        }
        Ok(())
    }

    /// Suite parameters with tolerance overrides applied.
    pub fn run_params(&self) -> RunParams {
        let mut tol = Tolerances::default();
        if let Some(v) = self.route_tol {
            tol.route = v;
        }
        if let Some(v) = self.anomaly_tol {
            tol.anomaly = v;
        }
        if let Some(v) = self.primary_tol {
            tol.primary = v;
        }
        if let Some(v) = self.zeta_abel_tol {
            tol.zeta_abel = v;
        }
        RunParams {
            n_max: self.n_max,
            k_trunc: self.k_trunc,
            hbar_order: self.hbar_order,
            band_limit: self.band_limit,
            seed: self.seed,
            tolerances: tol,
        }
    }
}

impl fmt::Display for RunConfig {
    /// The effective-config dump; parsing it back yields an identical
    /// configuration.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_max = {}", self.n_max)?;
        writeln!(f, "k_trunc = {}", self.k_trunc)?;
        writeln!(f, "hbar_order = {}", self.hbar_order)?;
        writeln!(f, "band_limit = {}", self.band_limit)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "out_dir = {}", self.out_dir.display())?;
        if let Some(v) = self.route_tol {
            writeln!(f, "route_tol = {v:e}")?;
        }
        if let Some(v) = self.anomaly_tol {
            writeln!(f, "anomaly_tol = {v:e}")?;
        }
        if let Some(v) = self.primary_tol {
            writeln!(f, "primary_tol = {v:e}")?;
        }
        if let Some(v) = self.zeta_abel_tol {
            writeln!(f, "zeta_abel_tol = {v:e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn defaults_from_empty_input() {
        let cfg = RunConfig::resolve(None, &Overrides::default()).unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn flags_beat_file() {
        let file = write_temp("n_max = 8\nseed = 9\n");
        let flags = Overrides {
            n_max: Some(4),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some(file.path()), &flags).unwrap();
        assert_eq!(cfg.n_max, 4);
        assert_eq!(cfg.seed, 9);
    }

    #[test]
    fn constraint_violation_names_key() {
        let flags = Overrides {
            n_max: Some(8),
            k_trunc: Some(8),
            ..Default::default()
        };
        let err = RunConfig::resolve(None, &flags).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("k_trunc"), "message: {msg}");
    }

    #[test]
    fn unknown_and_malformed_keys_are_reported() {
        let file = write_temp("bogus_key = 3\n");
        let err = RunConfig::resolve(Some(file.path()), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("bogus_key"));

        let file = write_temp("n_max 12\n");
        let err = RunConfig::resolve(Some(file.path()), &Overrides::default()).unwrap_err();
        assert!(matches!(err, ConfigError::MalformedLine { line: 1, .. }));

        let file = write_temp("n_max = banana\n");
        let err = RunConfig::resolve(Some(file.path()), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("n_max"));
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let file = write_temp("# comment\n\n; other comment\nseed = 3\n");
        let cfg = RunConfig::resolve(Some(file.path()), &Overrides::default()).unwrap();
        assert_eq!(cfg.seed, 3);
    }

    #[test]
    fn effective_dump_round_trips() {
        let cfg = RunConfig {
            n_max: 5,
            k_trunc: 40,
            seed: 123,
            route_tol: Some(1e-9),
            out_dir: PathBuf::from("/tmp/reports"),
            ..Default::default()
        };
        let dump = cfg.to_string();
        let file = write_temp(&dump);
        let back = RunConfig::resolve(Some(file.path()), &Overrides::default()).unwrap();
        assert_eq!(back, cfg);
    }
}
