//! Run configuration: command-line flags over an optional TOML file over
//! defaults.

use std::path::Path;

use serde::Deserialize;

use crate::partitions::StrictPartition;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Values read from a config file; every key is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub r: Option<u32>,
    #[serde(alias = "beta_order")]
    pub beta_order: Option<u32>,
    pub depth: Option<u32>,
    pub weight: Option<u32>,
    pub kmax: Option<u32>,
    pub mu: Option<String>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub r: u32,
    pub beta_order: u32,
    pub depth: u32,
    pub weight: u32,
    pub kmax: u32,
    pub mu: Option<StrictPartition>,
    pub format: Format,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r: 2,
            beta_order: 4,
            depth: 25,
            weight: 7,
            kmax: 5,
            mu: None,
            format: Format::Json,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl RunConfig {
    /// `layers` are applied in order, later ones winning.
    pub fn resolve(layers: &[&FileConfig]) -> Result<Self> {
        let mut c = RunConfig::default();
        for l in layers {
            if let Some(v) = l.r {
                c.r = v;
            }
            if let Some(v) = l.beta_order {
                c.beta_order = v;
            }
            if let Some(v) = l.depth {
                c.depth = v;
            }
            if let Some(v) = l.weight {
                c.weight = v;
            }
            if let Some(v) = l.kmax {
                c.kmax = v;
            }
            if let Some(v) = &l.mu {
                c.mu = Some(v.parse()?);
            }
            if let Some(v) = l.format {
                c.format = v;
            }
            if let Some(v) = l.threads {
                c.threads = v;
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 || !self.r.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "r must be even and at least 2 (got {})",
                self.r
            )));
        }
        for (name, v) in [
            ("beta-order", self.beta_order),
            ("depth", self.depth),
            ("kmax", self.kmax),
        ] {
            if v < 1 {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        if self.threads < 1 {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(&[]).unwrap();
        assert_eq!(
            (c.r, c.beta_order, c.depth, c.weight, c.kmax),
            (2, 4, 25, 7, 5)
        );
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn precedence() {
        let file =
            FileConfig::parse("r = 4\nbeta-order = 2\nweight = 3\nformat = \"csv\"").unwrap();
        let flags = FileConfig {
            weight: Some(5),
            ..FileConfig::default()
        };
        let c = RunConfig::resolve(&[&file, &flags]).unwrap();
        assert_eq!((c.r, c.beta_order, c.weight), (4, 2, 5));
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn rejects_bad_values() {
        let odd = FileConfig {
            r: Some(3),
            ..FileConfig::default()
        };
        assert!(RunConfig::resolve(&[&odd]).is_err());
        let mu = FileConfig {
            mu: Some("2,2".into()),
            ..FileConfig::default()
        };
        assert!(RunConfig::resolve(&[&mu]).is_err());
        assert!(FileConfig::parse("colour = 1").is_err());
        let snake = FileConfig::parse("beta_order = 3").unwrap();
        assert_eq!(snake.beta_order, Some(3));
    }
}
