//! Line-based `key = value` configuration files. Keys are the long flag
//! names of the subcommand; flags given on the command line take precedence.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let key = key.trim().replace('_', "-");
            if key.is_empty() {
                return Err(format!("line {}: empty key", i + 1));
            }
            if entries.insert(key.clone(), value.trim().to_owned()).is_some() {
                return Err(format!("line {}: '{key}' given twice", i + 1));
            }
        }
        Ok(Self { entries })
    }

    /// Rejects keys that `subcommand` does not take.
    pub fn check_keys(&self, subcommand: &str, allowed: &[&str]) -> Result<(), CliError> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Config(format!(
                "config key '{k}' does not apply to '{subcommand}' (accepted: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    /// The flag value if given, else the file's.
    pub fn pick(&self, key: &str, flag: Option<String>) -> Option<String> {
        flag.or_else(|| self.entries.get(key).cloned())
    }

    pub fn pick_bool(&self, key: &str, flag: bool) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.entries.get(key).map(String::as_str) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(v) => Err(CliError::Config(format!("config key '{key}': '{v}' is not true or false"))),
        }
    }
}
