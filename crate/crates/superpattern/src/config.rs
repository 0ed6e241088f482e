//! Run-wide settings: enumeration caps, scalar mode, output format and the
//! seed for sampled checks.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use superpattern_core::Caps;

use crate::format::QMode;

/// Environment variable overriding [`Caps`], e.g.
/// `partitions=5000,group_order=100000,compositions=20000`.
pub const CAPS_ENV: &str = "SUPERPATTERN_CAPS";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown cap `{0}` (expected partitions, group_order or compositions)")]
    UnknownCap(String),
    #[error("cap entry `{0}` is not of the form name=value")]
    Malformed(String),
    #[error("cap `{name}` must be a positive integer, got `{value}`")]
    NotPositive { name: String, value: String },
    #[error("q must be a rational number, got `{0}`")]
    BadQ(String),
    #[error("q must be at least 2, got {0}")]
    SmallQ(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown output format `{0}` (expected json or csv)")]
    BadFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(ConfigError::BadFormat(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub caps: Caps,
    pub q: QMode,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            caps: Caps::default(),
            q: QMode::Symbolic,
            format: OutputFormat::Json,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Defaults overridden by [`CAPS_ENV`] when it is set.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Ok(spec) = std::env::var(CAPS_ENV) {
            cfg.caps = parse_caps(&spec, cfg.caps)?;
        }
        Ok(cfg)
    }
}

/// Applies comma-separated `name=value` overrides to `base`.
pub fn parse_caps(spec: &str, base: Caps) -> Result<Caps, ConfigError> {
    let mut caps = base;
    for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| ConfigError::Malformed(entry.to_owned()))?;
        let (name, value) = (name.trim(), value.trim());
        let n: u64 = value
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ConfigError::NotPositive {
                name: name.to_owned(),
                value: value.to_owned(),
            })?;
        match name {
            "partitions" => caps.partitions = n,
            "group_order" => caps.group_order = n,
            "compositions" => caps.compositions = n,
            _ => return Err(ConfigError::UnknownCap(name.to_owned())),
        }
    }
    Ok(caps)
}

/// A concrete `q ≥ 2`, written as an integer or `a/b`.
pub fn parse_q(s: &str) -> Result<BigRational, ConfigError> {
    let q: BigRational = s.trim().parse().map_err(|_| ConfigError::BadQ(s.to_owned()))?;
    if q < BigRational::from_integer(BigInt::from(2)) {
        return Err(ConfigError::SmallQ(s.to_owned()));
    }
    Ok(q)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A comma-separated list of primes, e.g. `2,3`.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let p: u64 = part.parse().map_err(|_| ConfigError::BadQ(part.to_owned()))?;
        if !is_prime(p) {
            return Err(ConfigError::NotPrime(p));
        }
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_overrides() {
        let base = Caps::default();
        let c = parse_caps("partitions=10, compositions=7", base).unwrap();
        assert_eq!((c.partitions, c.compositions, c.group_order), (10, 7, base.group_order));
        assert_eq!(parse_caps("", base).unwrap(), base);
        assert!(matches!(parse_caps("partitions=0", base), Err(ConfigError::NotPositive { .. })));
        assert!(matches!(parse_caps("colors=3", base), Err(ConfigError::UnknownCap(_))));
        assert!(matches!(parse_caps("partitions", base), Err(ConfigError::Malformed(_))));
    }

    #[test]
    fn q_values() {
        assert_eq!(parse_q("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_q("5/2").unwrap(), BigRational::new(5.into(), 2.into()));
        assert!(matches!(parse_q("1"), Err(ConfigError::SmallQ(_))));
        assert!(matches!(parse_q("x"), Err(ConfigError::BadQ(_))));
    }

    #[test]
    fn primes() {
        assert_eq!(parse_primes("3,2,3").unwrap(), vec![2, 3]);
        assert!(matches!(parse_primes("2,4"), Err(ConfigError::NotPrime(4))));
        assert!((0..30).filter(|&p| is_prime(p)).eq([2, 3, 5, 7, 11, 13, 17, 19, 23, 29]));
    }

    #[test]
    fn formats() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
