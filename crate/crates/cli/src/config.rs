//! Optional `key = value` settings file. Command-line flags take precedence.
//!
//! Recognized keys: `factor_bound`, `witness_primes`, `recombination_budget`,
//! `workers`, `seed`. Blank lines and `#` comments are ignored.

use std::path::Path;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub factor_bound: Option<u64>,
    pub witness_primes: Option<usize>,
    pub recombination_budget: Option<u64>,
    pub workers: Option<usize>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = FileConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| format!("line {}: {msg}", lineno + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |_| at(format!("invalid value {value:?} for {key}"));
            match key {
                "factor_bound" => cfg.factor_bound = Some(value.parse().map_err(bad)?),
                "witness_primes" => cfg.witness_primes = Some(value.parse().map_err(bad)?),
                "recombination_budget" => cfg.recombination_budget = Some(value.parse().map_err(bad)?),
                "workers" => cfg.workers = Some(value.parse().map_err(bad)?),
                "seed" => cfg.seed = Some(value.parse().map_err(bad)?),
                _ => return Err(at(format!("unknown key {key:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = FileConfig::parse("# comment\nfactor_bound = 1000\n\nseed=9 # trailing\n").unwrap();
        assert_eq!(c.factor_bound, Some(1000));
        assert_eq!(c.seed, Some(9));
        assert_eq!(c.workers, None);
        assert!(FileConfig::parse("colour = blue").unwrap_err().contains("line 1"));
        assert!(FileConfig::parse("workers = many").is_err());
        assert!(FileConfig::parse("workers").is_err());
    }
}
