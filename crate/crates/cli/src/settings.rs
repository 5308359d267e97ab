use std::fmt;
use std::path::Path;

use actiview_core::config::{parse_pairs, ConfigError};
use actiview_core::Settings;

#[derive(Debug)]
pub enum SettingsError {
    Read(String, std::io::Error),
    Config(String, ConfigError),
    Override(String),
}

impl fmt::Display for SettingsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SettingsError::Read(path, e) => write!(f, "cannot read {path}: {e}"),
            SettingsError::Config(origin, e) => write!(f, "{origin}: {e}"),
            SettingsError::Override(s) => write!(f, "--set expects KEY=VALUE, got `{s}`"),
        }
    }
}

/// Defaults, then the file's pairs, then each `--set` in order.
pub fn load(file: Option<&Path>, overrides: &[String]) -> Result<Settings, SettingsError> {
    let mut pairs = match file {
        Some(path) => {
            let origin = path.display().to_string();
            let text = std::fs::read_to_string(path)
                .map_err(|e| SettingsError::Read(origin.clone(), e))?;
            parse_pairs(&text).map_err(|e| SettingsError::Config(origin, e))?
        }
        None => Default::default(),
    };
    for item in overrides {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| SettingsError::Override(item.clone()))?;
        pairs.insert(k.trim().to_string(), v.trim().to_string());
    }
    Settings::from_pairs(&pairs).map_err(|e| SettingsError::Config("configuration".into(), e))
}
