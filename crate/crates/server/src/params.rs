use std::collections::HashMap;

use actiview_core::analytics::FilterSpec;
use actiview_core::ingest::parse_date;
use actiview_core::model::{BiometricKind, Gender};
use chrono::NaiveDate;

use crate::ApiError;

/// Query-string accessors that turn malformed values into 400s.
pub(crate) struct Params(HashMap<String, String>);

impl Params {
    pub fn new(map: HashMap<String, String>) -> Self {
        Params(map)
    }

    /// Present and non-empty.
    pub fn optional(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str).filter(|v| !v.is_empty())
    }

    pub fn required(&self, key: &str) -> Result<&str, ApiError> {
        self.optional(key)
            .ok_or_else(|| ApiError::bad_request(format!("missing parameter `{key}`")))
    }

    pub fn gender(&self) -> Result<Option<Gender>, ApiError> {
        self.optional("gender")
            .map(|g| {
                g.parse()
                    .map_err(|_| ApiError::bad_request(format!("gender must be male or female, got `{g}`")))
            })
            .transpose()
    }

    fn date(&self, key: &str) -> Result<Option<NaiveDate>, ApiError> {
        self.optional(key)
            .map(|v| {
                parse_date(v)
                    .ok_or_else(|| ApiError::bad_request(format!("`{key}` must be YYYY-MM-DD, got `{v}`")))
            })
            .transpose()
    }

    fn number(&self, key: &str) -> Result<Option<f64>, ApiError> {
        self.optional(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| ApiError::bad_request(format!("`{key}` must be a number, got `{v}`")))
            })
            .transpose()
    }

    pub fn positive(&self, key: &str) -> Result<Option<f64>, ApiError> {
        match self.number(key)? {
            Some(x) if x <= 0.0 => Err(ApiError::bad_request(format!(
                "`{key}` must be positive, got {x}"
            ))),
            other => Ok(other),
        }
    }

    pub fn flag(&self, key: &str) -> Result<Option<bool>, ApiError> {
        match self.optional(key) {
            None => Ok(None),
            Some("true") => Ok(Some(true)),
            Some("false") => Ok(Some(false)),
            Some(v) => Err(ApiError::bad_request(format!(
                "`{key}` must be true or false, got `{v}`"
            ))),
        }
    }

    pub fn filter(&self) -> Result<FilterSpec, ApiError> {
        let threshold = self.number("max_sedentary_hours")?.unwrap_or(24.0);
        Ok(FilterSpec::new(threshold, self.date("from")?, self.date("to")?)?)
    }

    /// Comma list of kind names; every kind when absent.
    pub fn kinds(&self) -> Result<Vec<BiometricKind>, ApiError> {
        let Some(list) = self.optional("kinds") else {
            return Ok(BiometricKind::ALL.to_vec());
        };
        let mut kinds = Vec::new();
        for token in list.split(',') {
            let kind: BiometricKind = token
                .parse()
                .map_err(|e: actiview_core::model::UnknownName| ApiError::bad_request(e.to_string()))?;
            if !kinds.contains(&kind) {
                kinds.push(kind);
            }
        }
        Ok(kinds)
    }
}
