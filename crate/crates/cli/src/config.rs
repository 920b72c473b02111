//! `key=value` configuration files. Command-line flags take precedence.

use crate::CliError;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

pub const KNOWN_KEYS: [&str; 15] = [
    "m",
    "format",
    "output",
    "n",
    "parity",
    "root_index",
    "sign",
    "zeta",
    "lambda",
    "samples",
    "x_max",
    "scaled",
    "scope",
    "max_n",
    "points",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Blank lines and `#` comments are ignored; keys accept `-` or `_`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key '{key}'",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::Usage(format!("config key '{key}': {e}")))
            })
            .transpose()
    }
}

/// Flag value if given, else the config value.
pub fn pick<T: FromStr>(flag: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = ConfigFile::parse("# comment\nm = 2.5\n\nroot-index=1\n").unwrap();
        assert_eq!(c.get::<f64>("m").unwrap(), Some(2.5));
        assert_eq!(c.get::<usize>("root_index").unwrap(), Some(1));
        assert_eq!(c.get::<usize>("n").unwrap(), None);
        assert!(c.get::<usize>("m").is_err());
        assert!(ConfigFile::parse("bogus=1").is_err());
        assert!(ConfigFile::parse("m 2").is_err());
    }

    #[test]
    fn flags_win() {
        let c = ConfigFile::parse("m=3").unwrap();
        assert_eq!(pick(Some(1.0), &c, "m").unwrap(), Some(1.0));
        assert_eq!(pick::<f64>(None, &c, "m").unwrap(), Some(3.0));
    }
}
