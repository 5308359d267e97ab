//! Dataset-wide invariant checks.
//!
//! Problems are collected, never thrown. Row numbers assume the lists are in
//! file order with one header line, which is what [`crate::ingest`] produces.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use chrono::NaiveDate;
use serde::Serialize;

use crate::analytics::{CalendarConfig, SECONDS_PER_DAY};
use crate::ingest::{ACTIGRAPHY_FILE, BIOMETRICS_FILE, SUBJECTS_FILE};
use crate::model::{BiometricKind, BiometricMeasurement, Epoch, Subject};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub file: &'static str,
    pub line: usize,
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: [{}] {}", self.file, self.line, self.code, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_accepted(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn push(&mut self, file: &'static str, line: usize, code: &'static str, message: String) {
        self.issues.push(Issue {
            file,
            line,
            code,
            message,
        });
    }
}

fn line_of(index: usize) -> usize {
    index + 2
}

/// Checks every cross-row invariant of a dataset.
///
/// Local dates (for the 24 h per day bound) use `cal`'s time zone.
pub fn validate_dataset(
    subjects: &[Subject],
    epochs: &[Epoch],
    measurements: &[BiometricMeasurement],
    cal: &CalendarConfig,
) -> ValidationReport {
    let mut report = ValidationReport::default();

    let mut known: HashMap<&str, usize> = HashMap::new();
    for (i, s) in subjects.iter().enumerate() {
        if s.id.is_empty() {
            report.push(SUBJECTS_FILE, line_of(i), "empty_id", "empty subject_id".into());
            continue;
        }
        if let Some(first) = known.get(s.id.as_str()) {
            report.push(
                SUBJECTS_FILE,
                line_of(i),
                "duplicate_subject",
                format!("duplicate subject_id `{}` (first at line {first})", s.id),
            );
        } else {
            known.insert(&s.id, line_of(i));
        }
    }

    check_epochs(epochs, &known, cal, &mut report);
    check_measurements(measurements, &known, &mut report);
    report
}

fn check_epochs(
    epochs: &[Epoch],
    known: &HashMap<&str, usize>,
    cal: &CalendarConfig,
    report: &mut ValidationReport,
) {
    let mut by_subject: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, e) in epochs.iter().enumerate() {
        if !known.contains_key(e.subject_id.as_str()) {
            report.push(
                ACTIGRAPHY_FILE,
                line_of(i),
                "unknown_subject",
                format!("unknown subject_id `{}`", e.subject_id),
            );
            continue;
        }
        if e.duration_s == 0 {
            report.push(
                ACTIGRAPHY_FILE,
                line_of(i),
                "bad_duration",
                "epoch duration must be positive".into(),
            );
            continue;
        }
        by_subject.entry(&e.subject_id).or_default().push(i);
    }

    for (subject, mut idx) in by_subject {
        idx.sort_by_key(|&i| (epochs[i].start, i));
        for w in idx.windows(2) {
            let (prev, next) = (&epochs[w[0]], &epochs[w[1]]);
            if prev.end() > next.start {
                let (a, b) = (line_of(w[0].min(w[1])), line_of(w[0].max(w[1])));
                report.push(
                    ACTIGRAPHY_FILE,
                    b,
                    "overlapping_epochs",
                    format!("epochs at lines {a} and {b} overlap for subject `{subject}`"),
                );
            }
        }

        let mut per_day: BTreeMap<NaiveDate, (u64, usize)> = BTreeMap::new();
        for &i in &idx {
            let slot = per_day
                .entry(cal.local_date(&epochs[i].start))
                .or_insert((0, i));
            slot.0 += u64::from(epochs[i].duration_s);
            slot.1 = slot.1.max(i);
        }
        for (date, (secs, last)) in per_day {
            if secs > SECONDS_PER_DAY {
                report.push(
                    ACTIGRAPHY_FILE,
                    line_of(last),
                    "day_over_24h",
                    format!(
                        "subject `{subject}` has {:.4} h of epochs starting on {date}",
                        secs as f64 / 3600.0
                    ),
                );
            }
        }
    }
}

fn check_measurements(
    measurements: &[BiometricMeasurement],
    known: &HashMap<&str, usize>,
    report: &mut ValidationReport,
) {
    let mut seen: HashMap<(&str, NaiveDate, BiometricKind), usize> = HashMap::new();
    let mut unknown_reported: HashSet<&str> = HashSet::new();
    for (i, m) in measurements.iter().enumerate() {
        let line = line_of(i);
        if !known.contains_key(m.subject_id.as_str()) {
            report.push(
                BIOMETRICS_FILE,
                line,
                "unknown_subject",
                format!("unknown subject_id `{}`", m.subject_id),
            );
            unknown_reported.insert(&m.subject_id);
            continue;
        }
        if !(m.value.is_finite() && m.value > 0.0) {
            report.push(
                BIOMETRICS_FILE,
                line,
                "out_of_range",
                format!("{} value {} must be positive", m.kind, m.value),
            );
        } else if let Some((lo, hi)) = m.kind.valid_range() {
            if !(lo < m.value && m.value < hi) {
                report.push(
                    BIOMETRICS_FILE,
                    line,
                    "out_of_range",
                    format!("{} value {} outside ({lo}, {hi})", m.kind, m.value),
                );
            }
        }
        match seen.get(&(m.subject_id.as_str(), m.date, m.kind)) {
            Some(&first) => report.push(
                BIOMETRICS_FILE,
                line,
                "duplicate_measurement",
                format!(
                    "second {} for subject `{}` on {} (first at line {first})",
                    m.kind, m.subject_id, m.date
                ),
            ),
            None => {
                seen.insert((&m.subject_id, m.date, m.kind), line);
            }
        }
    }
}
