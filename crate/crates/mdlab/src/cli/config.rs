//! Flat `key = value` config files and the flag > file > default resolution.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Values from an optional config file, checked against the keys the
/// subcommand understands. Lines are `key = value`; blank lines and lines
/// starting with `#` are skipped.
pub struct Resolver {
    values: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(path: Option<&Path>, allowed: &[&str]) -> Result<Self> {
        let mut values = BTreeMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)?;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(Error::Config(format!(
                        "{}:{}: expected `key = value`, got `{raw}`",
                        path.display(),
                        idx + 1
                    )));
                };
                let key = key.trim().to_string();
                if !allowed.contains(&key.as_str()) {
                    return Err(Error::Config(format!(
                        "{}:{}: unknown key `{key}` (this command accepts: {})",
                        path.display(),
                        idx + 1,
                        allowed.join(", ")
                    )));
                }
                if values.insert(key.clone(), value.trim().to_string()).is_some() {
                    return Err(Error::Config(format!(
                        "{}:{}: duplicate key `{key}`",
                        path.display(),
                        idx + 1
                    )));
                }
            }
        }
        Ok(Resolver { values })
    }

    fn parsed<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| {
                Error::Config(format!("config key `{key}`: cannot parse `{raw}`: {e}"))
            }),
        }
    }

    /// Flag value if given, else the file value, else `None`.
    pub fn opt<T>(&self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parsed(key),
        }
    }

    /// Like [`Resolver::opt`] but the value must come from somewhere.
    pub fn require<T>(&self, key: &str, flag: Option<T>) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.opt(key, flag)?.ok_or_else(|| {
            Error::Config(format!(
                "missing required value: pass --{key} or set `{key}` in the config file"
            ))
        })
    }

    /// Flag > file > `default`.
    pub fn or_default<T>(&self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.opt(key, flag)?.unwrap_or(default))
    }

    /// Presence flag: set on the command line wins, else the file value
    /// (`true`/`false`), else off.
    pub fn flag(&self, key: &str, set: bool) -> Result<bool> {
        if set {
            return Ok(true);
        }
        Ok(self.parsed::<bool>(key)?.unwrap_or(false))
    }
}
