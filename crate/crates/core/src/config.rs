//! Run configuration: defaults, then a `key = value` file, then `IM_*`
//! environment variables; command-line flags are applied last by the caller.

use std::path::{Path, PathBuf};

use crate::lab::Lab;
use crate::lang::{Modulus, DEFAULT_CEILING};
use crate::metric::SearchBounds;
use crate::transform::catalog::DEFAULT_BOUND;
use crate::{Error, Result};

pub const ENV_PREFIX: &str = "IM_";
pub const KEYS: [&str; 7] = [
    "modulus",
    "ceiling",
    "bound",
    "max_tokens",
    "max_chain_length",
    "max_explored",
    "catalog",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub modulus: Modulus,
    pub ceiling: u64,
    /// Default verification bound in tokens.
    pub bound: usize,
    pub search: SearchBounds,
    pub catalog: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            modulus: Modulus::DEFAULT,
            ceiling: DEFAULT_CEILING,
            bound: DEFAULT_BOUND,
            search: SearchBounds::default(),
            catalog: None,
        }
    }
}

fn positive<T: std::str::FromStr + PartialEq + Default>(key: &str, value: &str) -> Result<T> {
    value
        .parse::<T>()
        .ok()
        .filter(|v| *v != T::default())
        .ok_or_else(|| Error::Config(format!("{key}: expected a positive integer, got `{value}`")))
}

impl Config {
    /// Sets one field from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "modulus" => {
                let m: u32 = value
                    .parse()
                    .map_err(|_| Error::Config(format!("modulus: not a number `{value}`")))?;
                self.modulus = Modulus::new(m)?;
            }
            "ceiling" => self.ceiling = positive(key, value)?,
            "bound" => self.bound = positive(key, value)?,
            "max_tokens" => self.search.max_program_tokens = Some(positive(key, value)?),
            "max_chain_length" => self.search.max_chain_length = Some(positive(key, value)?),
            "max_explored" => self.search.max_explored = Some(positive(key, value)?),
            "catalog" => self.catalog = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k.trim(), v)
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.apply_text(&text)
    }

    /// Applies `IM_<KEY>` variables from `vars`.
    pub fn apply_env<I, K, V>(&mut self, vars: I) -> Result<()>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let vars: Vec<(K, V)> = vars.into_iter().collect();
        for key in KEYS {
            let name = format!("{ENV_PREFIX}{}", key.to_uppercase());
            if let Some((_, v)) = vars.iter().find(|(k, _)| k.as_ref() == name) {
                self.set(key, v.as_ref())
                    .map_err(|e| Error::Config(format!("{name}: {e}")))?;
            }
        }
        Ok(())
    }

    /// Defaults, then `file` (if any), then the process environment.
    pub fn load(file: Option<&Path>) -> Result<Config> {
        let mut c = Config::default();
        if let Some(path) = file {
            c.apply_file(path)?;
        }
        c.apply_env(std::env::vars())?;
        Ok(c)
    }

    pub fn lab(&self) -> Lab {
        Lab::new(self.modulus, self.ceiling)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::DEFAULT_MAX_EXPLORED;

    #[test]
    fn precedence() {
        let mut c = Config::default();
        assert_eq!(c.search.max_explored, Some(DEFAULT_MAX_EXPLORED));
        c.apply_text("# lab\nmodulus = 7\nbound=5\n").unwrap();
        assert_eq!(c.modulus.get(), 7);
        c.apply_env([("IM_MODULUS", "3"), ("OTHER", "x")]).unwrap();
        assert_eq!(c.modulus.get(), 3);
        assert_eq!(c.bound, 5);
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = Config::default();
        assert!(c.set("modulus", "1").is_err());
        assert!(c.set("modulus", "17").is_err());
        assert!(c.set("bound", "0").is_err());
        assert!(c.set("colour", "red").is_err());
        let err = c.apply_text("modulus = 5\nnonsense\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
