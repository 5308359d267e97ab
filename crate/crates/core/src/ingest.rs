//! Strict readers and writers for the three dataset files.
//!
//! All files are UTF-8, comma separated, unquoted, with a mandatory header
//! row. Lines end in `\n` or `\r\n`. Nothing is coerced: a malformed field is
//! reported with its file name and 1-based line number, and every bad row in
//! a file is reported, not just the first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;

use chrono::{DateTime, FixedOffset, NaiveDate, SecondsFormat};
use thiserror::Error;

use crate::model::{BiometricKind, BiometricMeasurement, Epoch, Gender, Subject};

pub const SUBJECTS_FILE: &str = "subjects.csv";
pub const ACTIGRAPHY_FILE: &str = "actigraphy.csv";
pub const BIOMETRICS_FILE: &str = "biometrics.csv";

pub const SUBJECTS_HEADER: &str = "subject_id,gender";
pub const ACTIGRAPHY_HEADER: &str = "subject_id,timestamp,epoch_seconds,counts";
pub const BIOMETRICS_HEADER: &str = "subject_id,date,kind,value";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub file: &'static str,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.file, self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{file}: cannot read: {source}")]
    Io {
        file: &'static str,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: not valid UTF-8")]
    Encoding { file: &'static str },
    #[error("{file}:1: expected header `{expected}`, found `{found}`")]
    Header {
        file: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("{} invalid row(s), first: {}", .0.len(), .0[0])]
    Rows(Vec<RowError>),
}

impl IngestError {
    /// Every problem as a row-level error (header problems sit on line 1).
    pub fn row_errors(&self) -> Vec<RowError> {
        match self {
            IngestError::Rows(rows) => rows.clone(),
            IngestError::Header { file, .. }
            | IngestError::Encoding { file }
            | IngestError::Io { file, .. } => vec![RowError {
                file,
                line: 1,
                message: self.to_string(),
            }],
        }
    }
}

/// One data line split into fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRow<'a> {
    pub file: &'static str,
    /// 1-based; data rows start at 2.
    pub line: usize,
    pub fields: Vec<&'a str>,
}

impl RawRow<'_> {
    fn error(&self, message: impl Into<String>) -> RowError {
        RowError {
            file: self.file,
            line: self.line,
            message: message.into(),
        }
    }
}

fn read_text<R: Read>(file: &'static str, mut input: R) -> Result<String, IngestError> {
    let mut bytes = Vec::new();
    input
        .read_to_end(&mut bytes)
        .map_err(|source| IngestError::Io { file, source })?;
    String::from_utf8(bytes).map_err(|_| IngestError::Encoding { file })
}

/// Splits `text` into data rows after checking the header.
fn split_rows<'a>(
    file: &'static str,
    header: &'static str,
    text: &'a str,
) -> Result<(Vec<RawRow<'a>>, Vec<RowError>), IngestError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    let strip = |l: &'a str| l.strip_suffix('\r').unwrap_or(l);
    let found = lines.first().map(|l| strip(l)).unwrap_or("");
    if found != header {
        return Err(IngestError::Header {
            file,
            expected: header,
            found: found.to_string(),
        });
    }
    let width = header.split(',').count();
    let mut rows = Vec::with_capacity(lines.len().saturating_sub(1));
    let mut errors = Vec::new();
    for (idx, raw) in lines.iter().enumerate().skip(1) {
        let line = idx + 1;
        let content = strip(raw);
        let fields: Vec<&str> = content.split(',').collect();
        if content.is_empty() {
            errors.push(RowError {
                file,
                line,
                message: "empty line".into(),
            });
        } else if fields.len() != width {
            errors.push(RowError {
                file,
                line,
                message: format!("expected {width} fields, found {}", fields.len()),
            });
        } else {
            rows.push(RawRow { file, line, fields });
        }
    }
    Ok((rows, errors))
}

fn finish<T>(values: Vec<T>, mut errors: Vec<RowError>) -> Result<Vec<T>, IngestError> {
    if errors.is_empty() {
        Ok(values)
    } else {
        errors.sort_by_key(|e| e.line);
        Err(IngestError::Rows(errors))
    }
}

fn parse_subject_id<'a>(row: &RawRow<'a>) -> Result<&'a str, RowError> {
    let id = row.fields[0];
    if id.is_empty() {
        Err(row.error("empty subject_id"))
    } else {
        Ok(id)
    }
}

/// Digits only: no sign, no fraction, no exponent.
fn parse_unsigned(token: &str) -> Option<u64> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

pub fn parse_date(token: &str) -> Option<NaiveDate> {
    let b = token.as_bytes();
    let shape_ok = b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter()
            .enumerate()
            .all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit());
    if !shape_ok {
        return None;
    }
    NaiveDate::parse_from_str(token, "%Y-%m-%d").ok()
}

fn parse_timestamp(token: &str) -> Result<DateTime<FixedOffset>, String> {
    if token.len() <= 10 {
        return Err(format!("timestamp `{token}` lacks time-of-day"));
    }
    if token.as_bytes()[10] != b'T' {
        return Err(format!(
            "timestamp `{token}` must separate date and time with `T`"
        ));
    }
    DateTime::parse_from_rfc3339(token).map_err(|e| {
        format!("timestamp `{token}` is not ISO-8601 with an explicit UTC offset: {e}")
    })
}

pub fn parse_subjects<R: Read>(input: R) -> Result<Vec<Subject>, IngestError> {
    let text = read_text(SUBJECTS_FILE, input)?;
    let (rows, mut errors) = split_rows(SUBJECTS_FILE, SUBJECTS_HEADER, &text)?;
    let mut first_seen: HashMap<&str, usize> = HashMap::new();
    let mut subjects = Vec::with_capacity(rows.len());
    for row in &rows {
        let id = match parse_subject_id(row) {
            Ok(id) => id,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        let gender = match row.fields[1].parse::<Gender>() {
            Ok(g) => g,
            Err(e) => {
                errors.push(row.error(e.to_string()));
                continue;
            }
        };
        if let Some(first) = first_seen.get(id) {
            errors.push(row.error(format!("duplicate subject_id `{id}` (first at line {first})")));
            continue;
        }
        first_seen.insert(id, row.line);
        subjects.push(Subject {
            id: id.to_string(),
            gender,
        });
    }
    finish(subjects, errors)
}

pub fn parse_actigraphy<R: Read>(input: R) -> Result<Vec<Epoch>, IngestError> {
    let text = read_text(ACTIGRAPHY_FILE, input)?;
    let (rows, mut errors) = split_rows(ACTIGRAPHY_FILE, ACTIGRAPHY_HEADER, &text)?;
    let mut epochs = Vec::with_capacity(rows.len());
    for row in &rows {
        match parse_epoch_row(row) {
            Ok(e) => epochs.push(e),
            Err(e) => errors.push(e),
        }
    }
    finish(epochs, errors)
}

fn parse_epoch_row(row: &RawRow<'_>) -> Result<Epoch, RowError> {
    let subject_id = parse_subject_id(row)?;
    let start = parse_timestamp(row.fields[1]).map_err(|m| row.error(m))?;
    let secs = row.fields[2];
    let duration_s = match parse_unsigned(secs) {
        Some(0) => return Err(row.error("epoch_seconds must be positive")),
        Some(v) => u32::try_from(v)
            .map_err(|_| row.error(format!("epoch_seconds `{secs}` out of range")))?,
        None => {
            return Err(row.error(format!(
                "epoch_seconds `{secs}` is not a positive whole number"
            )))
        }
    };
    let raw_counts = row.fields[3];
    let counts = match parse_unsigned(raw_counts) {
        Some(v) => v,
        None if raw_counts.starts_with('-') => {
            return Err(row.error(format!("negative counts `{raw_counts}`")))
        }
        None => {
            return Err(row.error(format!(
                "counts `{raw_counts}` is not a non-negative whole number"
            )))
        }
    };
    Ok(Epoch {
        subject_id: subject_id.to_string(),
        start,
        duration_s,
        counts,
    })
}

pub fn parse_biometrics<R: Read>(input: R) -> Result<Vec<BiometricMeasurement>, IngestError> {
    let text = read_text(BIOMETRICS_FILE, input)?;
    let (rows, mut errors) = split_rows(BIOMETRICS_FILE, BIOMETRICS_HEADER, &text)?;
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        match parse_measurement_row(row) {
            Ok(m) => out.push(m),
            Err(e) => errors.push(e),
        }
    }
    finish(out, errors)
}

fn parse_measurement_row(row: &RawRow<'_>) -> Result<BiometricMeasurement, RowError> {
    let subject_id = parse_subject_id(row)?;
    let date = parse_date(row.fields[1])
        .ok_or_else(|| row.error(format!("bad date `{}` (want YYYY-MM-DD)", row.fields[1])))?;
    let kind: BiometricKind = row.fields[2]
        .parse()
        .map_err(|e: crate::model::UnknownName| row.error(e.to_string()))?;
    let token = row.fields[3];
    let value: f64 = token
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| row.error(format!("value `{token}` is not a number")))?;
    if value <= 0.0 {
        return Err(row.error(format!("value `{token}` must be positive")));
    }
    Ok(BiometricMeasurement {
        subject_id: subject_id.to_string(),
        date,
        kind,
        value,
    })
}

pub fn write_subjects(subjects: &[Subject]) -> String {
    let mut out = String::from(SUBJECTS_HEADER);
    out.push('\n');
    for s in subjects {
        out.push_str(&format!("{},{}\n", s.id, s.gender));
    }
    out
}

pub fn format_timestamp(ts: &DateTime<FixedOffset>) -> String {
    ts.to_rfc3339_opts(SecondsFormat::AutoSi, false)
}

pub fn write_actigraphy(epochs: &[Epoch]) -> String {
    let mut out = String::with_capacity(48 * (epochs.len() + 1));
    out.push_str(ACTIGRAPHY_HEADER);
    out.push('\n');
    for e in epochs {
        out.push_str(&format!(
            "{},{},{},{}\n",
            e.subject_id,
            format_timestamp(&e.start),
            e.duration_s,
            e.counts
        ));
    }
    out
}

pub fn write_biometrics(measurements: &[BiometricMeasurement]) -> String {
    let mut out = String::from(BIOMETRICS_HEADER);
    out.push('\n');
    for m in measurements {
        out.push_str(&format!(
            "{},{},{},{}\n",
            m.subject_id,
            m.date.format("%Y-%m-%d"),
            m.kind,
            m.value
        ));
    }
    out
}

/// Adds a BMI row for every (subject, date) that has a weight but no BMI.
///
/// BMI is `weight_kg / height_m²`. When the subject has no height on that
/// date, the most recent earlier height is carried forward (no window
/// limit). Dates with no usable height gain nothing. Input rows are never
/// changed or removed; derived rows are appended ordered by subject id and
/// date.
pub fn derive_bmi(measurements: &[BiometricMeasurement]) -> Vec<BiometricMeasurement> {
    #[derive(Default)]
    struct PerSubject {
        heights: BTreeMap<NaiveDate, f64>,
        weights: BTreeMap<NaiveDate, f64>,
        bmi_dates: Vec<NaiveDate>,
    }

    let mut by_subject: BTreeMap<&str, PerSubject> = BTreeMap::new();
    for m in measurements {
        let entry = by_subject.entry(m.subject_id.as_str()).or_default();
        match m.kind {
            BiometricKind::HeightM => {
                entry.heights.insert(m.date, m.value);
            }
            BiometricKind::WeightKg => {
                entry.weights.insert(m.date, m.value);
            }
            BiometricKind::Bmi => entry.bmi_dates.push(m.date),
            _ => {}
        }
    }

    let mut out = measurements.to_vec();
    for (subject_id, data) in &by_subject {
        for (&date, &weight) in &data.weights {
            if data.bmi_dates.contains(&date) {
                continue;
            }
            let Some((_, &height)) = data.heights.range(..=date).next_back() else {
                continue;
            };
            out.push(BiometricMeasurement {
                subject_id: subject_id.to_string(),
                date,
                kind: BiometricKind::Bmi,
                // (w / h) / h is exact for 80 kg at 1.60 m; w / (h * h) is not.
                value: weight / height / height,
            });
        }
    }
    out
}
