//! Flat `key=value` configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! cutpoints.light_cpm = 100
//! calendar.weekend_days = fri,sat
//! ```
//!
//! Unknown keys are rejected. Later values override earlier ones, which is
//! how command-line overrides are layered on top of a file.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::analytics::calendar::{parse_offset, CalendarError};
use crate::analytics::{CalendarConfig, DayPartConfig, RuleConfig};
use crate::classify::CutPointConfig;

pub const KEYS: &[&str] = &[
    "cutpoints.light_cpm",
    "cutpoints.moderate_cpm",
    "cutpoints.vigorous_cpm",
    "calendar.timezone",
    "calendar.weekend_days",
    "dayparts.morning_start_h",
    "dayparts.afternoon_start_h",
    "dayparts.evening_start_h",
    "flags.epsilon_hours",
    "rules.weekend_ratio",
    "rules.weekend_activity",
    "rules.afternoon_vigorous",
    "rules.target_weight",
    "http.cors_allow_all",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key=value`")]
    Syntax { line: usize },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("`{key}`: {message}")]
    Value { key: String, message: String },
    #[error(transparent)]
    CutPoints(#[from] crate::classify::InvalidCutPoints),
    #[error(transparent)]
    Calendar(#[from] CalendarError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub cutpoints: CutPointConfig,
    pub calendar: CalendarConfig,
    pub dayparts: DayPartConfig,
    /// Minimum MVPA difference (hours) for an activity flag.
    pub epsilon_hours: f64,
    pub rules: RuleConfig,
    pub cors_allow_all: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            cutpoints: CutPointConfig::default(),
            calendar: CalendarConfig::default(),
            dayparts: DayPartConfig::default(),
            epsilon_hours: 0.1,
            rules: RuleConfig::default(),
            cors_allow_all: true,
        }
    }
}

/// Parses `key=value` lines into an ordered map.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or(ConfigError::Syntax { line: idx + 1 })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn number(key: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ConfigError::Value {
            key: key.into(),
            message: format!("`{v}` is not a number"),
        })
}

fn boolean(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::Value {
            key: key.into(),
            message: format!("`{v}` is not true/false"),
        }),
    }
}

fn hour(key: &str, v: &str) -> Result<u32, ConfigError> {
    v.parse().map_err(|_| ConfigError::Value {
        key: key.into(),
        message: format!("`{v}` is not an hour"),
    })
}

impl Settings {
    pub fn from_text(text: &str) -> Result<Settings, ConfigError> {
        Settings::from_pairs(&parse_pairs(text)?)
    }

    /// Defaults overridden by `pairs`.
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Settings, ConfigError> {
        let mut s = Settings::default();
        let mut cut = [
            s.cutpoints.light_cpm(),
            s.cutpoints.moderate_cpm(),
            s.cutpoints.vigorous_cpm(),
        ];
        let mut parts = [6u32, 12, 18];
        for (key, v) in pairs {
            let k = key.as_str();
            match k {
                "cutpoints.light_cpm" => cut[0] = number(k, v)?,
                "cutpoints.moderate_cpm" => cut[1] = number(k, v)?,
                "cutpoints.vigorous_cpm" => cut[2] = number(k, v)?,
                "calendar.timezone" => s.calendar.timezone = parse_offset(v)?,
                "calendar.weekend_days" => s.calendar.weekend_days = v.parse()?,
                "dayparts.morning_start_h" => parts[0] = hour(k, v)?,
                "dayparts.afternoon_start_h" => parts[1] = hour(k, v)?,
                "dayparts.evening_start_h" => parts[2] = hour(k, v)?,
                "flags.epsilon_hours" => {
                    s.epsilon_hours = number(k, v)?;
                    if s.epsilon_hours < 0.0 {
                        return Err(ConfigError::Value {
                            key: key.clone(),
                            message: "must be non-negative".into(),
                        });
                    }
                }
                "rules.weekend_ratio" => {
                    s.rules.weekend_ratio = number(k, v)?;
                    if s.rules.weekend_ratio <= 0.0 {
                        return Err(ConfigError::Value {
                            key: key.clone(),
                            message: "must be positive".into(),
                        });
                    }
                }
                "rules.weekend_activity" => s.rules.weekend_activity = boolean(k, v)?,
                "rules.afternoon_vigorous" => s.rules.afternoon_vigorous = boolean(k, v)?,
                "rules.target_weight" => s.rules.target_weight = boolean(k, v)?,
                "http.cors_allow_all" => s.cors_allow_all = boolean(k, v)?,
                _ => return Err(ConfigError::UnknownKey(key.clone())),
            }
        }
        s.cutpoints = CutPointConfig::new(cut[0], cut[1], cut[2])?;
        s.dayparts = DayPartConfig::new(parts[0], parts[1], parts[2])?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use chrono::Weekday;

    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(Settings::from_text("").unwrap(), Settings::default());
        let d = Settings::default();
        assert_eq!(d.cutpoints.moderate_cpm(), 2296.0);
        assert_eq!(d.calendar.timezone.local_minus_utc(), 3 * 3600);
        assert!(d.calendar.weekend_days.contains(Weekday::Fri));
        assert_eq!(d.epsilon_hours, 0.1);
        assert_eq!(d.rules.weekend_ratio, 0.8);
        assert!(d.cors_allow_all);
    }

    #[test]
    fn overrides() {
        let s = Settings::from_text(
            "# pinned\ncalendar.weekend_days = sat,sun\n\ncutpoints.light_cpm=50\nflags.epsilon_hours=0.25\nhttp.cors_allow_all=false\n",
        )
        .unwrap();
        assert!(s.calendar.weekend_days.contains(Weekday::Sun));
        assert_eq!(s.cutpoints.light_cpm(), 50.0);
        assert_eq!(s.epsilon_hours, 0.25);
        assert!(!s.cors_allow_all);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Settings::from_text("nonsense"),
            Err(ConfigError::Syntax { line: 1 })
        ));
        assert!(matches!(
            Settings::from_text("cutpoints.extra=1"),
            Err(ConfigError::UnknownKey(_))
        ));
        assert!(matches!(
            Settings::from_text("cutpoints.light_cpm=5000"),
            Err(ConfigError::CutPoints(_))
        ));
        assert!(Settings::from_text("calendar.timezone=Mars").is_err());
        assert!(Settings::from_text("rules.weekend_ratio=0").is_err());
        assert!(Settings::from_text("http.cors_allow_all=yes").is_err());
    }

    #[test]
    fn every_listed_key_is_accepted() {
        let defaults = [
            "100", "2296", "4012", "+03:00", "fri,sat", "6", "12", "18", "0.1", "0.8", "true",
            "true", "true", "true",
        ];
        let pairs: BTreeMap<String, String> = KEYS
            .iter()
            .zip(defaults)
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        assert_eq!(Settings::from_pairs(&pairs).unwrap(), Settings::default());
    }
}
