//! Run configuration: series orders, quadrature orders, epsilon schedule,
//! output format and seed. Loadable from a flat `key=value` file.

use std::path::Path;

use crate::discquad::DiscQuadrature;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(format!("unknown output format '{other}'"))),
        }
    }
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Json => write!(f, "json"),
        }
    }
}

/// Reproducible run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Truncation order of projected Taylor expansions.
    pub series_order: usize,
    /// Cap on the inner coefficient sums.
    pub m_max: usize,
    pub radial_order: usize,
    pub angular_order: usize,
    /// Epsilon schedule exponents: eps = 2^-k for k in first..=last.
    pub epsilon_first_exp: u32,
    pub epsilon_last_exp: u32,
    pub format: OutputFormat,
    /// Seed for the random-polynomial property checks.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            series_order: 2000,
            m_max: 1_000_000,
            radial_order: 96,
            angular_order: 384,
            epsilon_first_exp: 3,
            epsilon_last_exp: 12,
            format: OutputFormat::Csv,
            seed: 7_425_413_137,
        }
    }
}

impl RunConfig {
    /// Parses a flat `key=value` file; `#`-prefixed lines and blanks are
    /// ignored; unknown keys are rejected.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let parse_usize = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| Error::config(format!("line {}: bad integer '{v}'", lineno + 1)))
            };
            match key {
                "series_order" => cfg.series_order = parse_usize(value)?,
                "m_max" => cfg.m_max = parse_usize(value)?,
                "radial_order" => cfg.radial_order = parse_usize(value)?,
                "angular_order" => cfg.angular_order = parse_usize(value)?,
                "epsilon_first_exp" => cfg.epsilon_first_exp = parse_usize(value)? as u32,
                "epsilon_last_exp" => cfg.epsilon_last_exp = parse_usize(value)? as u32,
                "format" => cfg.format = value.parse()?,
                "seed" => {
                    cfg.seed = value
                        .parse::<u64>()
                        .map_err(|_| Error::config(format!("line {}: bad seed '{value}'", lineno + 1)))?
                }
                other => {
                    return Err(Error::config(format!("line {}: unknown key '{other}'", lineno + 1)))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.series_order == 0 || self.m_max == 0 || self.radial_order == 0 || self.angular_order == 0 {
            return Err(Error::config("orders must be positive".to_string()));
        }
        if self.epsilon_first_exp >= self.epsilon_last_exp {
            return Err(Error::config(
                "epsilon exponents must satisfy first < last (schedule strictly decreasing)"
                    .to_string(),
            ));
        }
        Ok(())
    }

    pub fn epsilon_schedule(&self) -> Vec<f64> {
        (self.epsilon_first_exp..=self.epsilon_last_exp)
            .map(|k| 2.0_f64.powi(-(k as i32)))
            .collect()
    }

    pub fn quadrature(&self) -> Result<DiscQuadrature> {
        DiscQuadrature::new(self.radial_order, self.angular_order, 0.0, self.epsilon_schedule())
    }

    /// Canonical text form, the input of [`RunConfig::fingerprint`].
    pub fn canonical(&self) -> String {
        format!(
            "series_order={}\nm_max={}\nradial_order={}\nangular_order={}\nepsilon_first_exp={}\nepsilon_last_exp={}\nformat={}\nseed={}\n",
            self.series_order,
            self.m_max,
            self.radial_order,
            self.angular_order,
            self.epsilon_first_exp,
            self.epsilon_last_exp,
            self.format,
            self.seed
        )
    }

    /// FNV-1a hash of the canonical form; stamped into every output file so
    /// identical configurations yield byte-identical output.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.canonical().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
        assert_eq!(RunConfig::default().epsilon_schedule().len(), 10);
    }

    #[test]
    fn load_round_trip() {
        let dir = std::env::temp_dir().join("bergman-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# comment\nseries_order = 500\nformat=json\nseed=11\n").unwrap();
        let cfg = RunConfig::load(&path).unwrap();
        assert_eq!(cfg.series_order, 500);
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.seed, 11);
        assert_eq!(cfg.m_max, RunConfig::default().m_max);
    }

    #[test]
    fn bad_keys_rejected() {
        let dir = std::env::temp_dir().join("bergman-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        std::fs::write(&path, "not_a_key=1\n").unwrap();
        assert!(RunConfig::load(&path).is_err());
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = RunConfig::default();
        let mut b = RunConfig::default();
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.seed = 1;
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
