//! A loaded, validated and pre-aggregated dataset.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use thiserror::Error;

use crate::analytics::{
    self, cohort_stats, compare_subjects, recommend, subject_metrics, summarize_days,
    AnalyticsError, FilterSpec, SubjectData, SubjectMetrics,
};
use crate::classify::classify_all;
use crate::config::Settings;
use crate::ingest::{
    self, derive_bmi, IngestError, ACTIGRAPHY_FILE, BIOMETRICS_FILE, SUBJECTS_FILE,
};
use crate::model::{
    BiometricKind, BiometricMeasurement, ClassifiedEpoch, CohortStats, ComparisonReport,
    DaySummary, Epoch, Gender, Recommendation, Subject,
};
use crate::validate::{validate_dataset, ValidationReport};

/// The three files as parsed, before validation.
#[derive(Debug, Clone, Default)]
pub struct RawDataset {
    pub subjects: Vec<Subject>,
    pub epochs: Vec<Epoch>,
    pub measurements: Vec<BiometricMeasurement>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("missing data file(s): {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    Missing(Vec<PathBuf>),
    #[error("{} file(s) failed to parse", .0.len())]
    Parse(Vec<IngestError>),
    #[error("dataset failed validation with {} issue(s)", .0.issues.len())]
    Invalid(ValidationReport),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("unknown subject `{0}`")]
    UnknownSubject(String),
    #[error("subjects to compare must differ")]
    SameSubject,
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
}

impl RawDataset {
    /// Reads `subjects.csv`, `actigraphy.csv` and `biometrics.csv` from `dir`.
    pub fn read_dir(dir: &Path) -> Result<RawDataset, LoadError> {
        let paths = [SUBJECTS_FILE, ACTIGRAPHY_FILE, BIOMETRICS_FILE].map(|f| dir.join(f));
        let missing: Vec<PathBuf> = paths.iter().filter(|p| !p.is_file()).cloned().collect();
        if !missing.is_empty() {
            return Err(LoadError::Missing(missing));
        }
        let open = |p: &Path, name: &'static str| {
            File::open(p).map_err(|source| IngestError::Io { file: name, source })
        };
        let subjects = open(&paths[0], SUBJECTS_FILE).and_then(ingest::parse_subjects);
        let epochs = open(&paths[1], ACTIGRAPHY_FILE).and_then(ingest::parse_actigraphy);
        let measurements = open(&paths[2], BIOMETRICS_FILE).and_then(ingest::parse_biometrics);
        match (subjects, epochs, measurements) {
            (Ok(subjects), Ok(epochs), Ok(measurements)) => Ok(RawDataset {
                subjects,
                epochs,
                measurements,
            }),
            (s, e, m) => Err(LoadError::Parse(
                [s.err(), e.err(), m.err()].into_iter().flatten().collect(),
            )),
        }
    }

    pub fn validate(&self, settings: &Settings) -> ValidationReport {
        validate_dataset(
            &self.subjects,
            &self.epochs,
            &self.measurements,
            &settings.calendar,
        )
    }
}

/// Everything known about one subject, with epochs classified and days
/// summarised.
#[derive(Debug, Clone)]
pub struct SubjectRecord {
    pub subject: Subject,
    pub epochs: Vec<ClassifiedEpoch>,
    pub days: Vec<DaySummary>,
    pub measurements: Vec<BiometricMeasurement>,
}

impl SubjectRecord {
    pub fn data(&self) -> SubjectData<'_> {
        SubjectData {
            subject: &self.subject,
            epochs: &self.epochs,
            days: &self.days,
            measurements: &self.measurements,
        }
    }

    pub fn series(&self, kind: BiometricKind) -> Vec<(NaiveDate, f64)> {
        self.data().series(kind)
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    settings: Settings,
    records: BTreeMap<String, SubjectRecord>,
    epoch_count: usize,
    measurement_count: usize,
}

impl Dataset {
    pub fn load(dir: &Path, settings: Settings) -> Result<Dataset, LoadError> {
        Dataset::build(RawDataset::read_dir(dir)?, settings)
    }

    /// Validates, derives BMI, classifies epochs and summarises days.
    pub fn build(raw: RawDataset, settings: Settings) -> Result<Dataset, LoadError> {
        let report = raw.validate(&settings);
        if !report.is_accepted() {
            return Err(LoadError::Invalid(report));
        }
        let measurements = derive_bmi(&raw.measurements);
        let classified = classify_all(&raw.epochs, &settings.cutpoints);

        let mut records: BTreeMap<String, SubjectRecord> = raw
            .subjects
            .into_iter()
            .map(|s| {
                (
                    s.id.clone(),
                    SubjectRecord {
                        subject: s,
                        epochs: Vec::new(),
                        days: Vec::new(),
                        measurements: Vec::new(),
                    },
                )
            })
            .collect();
        let epoch_count = classified.len();
        for ce in classified {
            if let Some(r) = records.get_mut(&ce.epoch.subject_id) {
                r.epochs.push(ce);
            }
        }
        let measurement_count = measurements.len();
        for m in measurements {
            if let Some(r) = records.get_mut(&m.subject_id) {
                r.measurements.push(m);
            }
        }
        for r in records.values_mut() {
            r.epochs.sort_by_key(|ce| ce.epoch.start);
            r.measurements.sort_by_key(|m| (m.kind, m.date));
            r.days = summarize_days(&r.epochs, &settings.calendar)?;
        }

        Ok(Dataset {
            settings,
            records,
            epoch_count,
            measurement_count,
        })
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn subject_count(&self) -> usize {
        self.records.len()
    }

    pub fn epoch_count(&self) -> usize {
        self.epoch_count
    }

    /// Including derived BMI rows.
    pub fn measurement_count(&self) -> usize {
        self.measurement_count
    }

    /// Earliest and latest date with any activity day or measurement.
    pub fn date_range(&self) -> Option<(NaiveDate, NaiveDate)> {
        let dates = self.records.values().flat_map(|r| {
            r.days
                .iter()
                .map(|d| d.date)
                .chain(r.measurements.iter().map(|m| m.date))
        });
        dates.fold(None, |acc, d| match acc {
            None => Some((d, d)),
            Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
        })
    }

    /// Subjects sorted by id, optionally restricted to one gender.
    pub fn subjects(&self, gender: Option<Gender>) -> Vec<&Subject> {
        self.records
            .values()
            .map(|r| &r.subject)
            .filter(|s| gender.is_none_or(|g| s.gender == g))
            .collect()
    }

    pub fn record(&self, id: &str) -> Result<&SubjectRecord, QueryError> {
        self.records
            .get(id)
            .ok_or_else(|| QueryError::UnknownSubject(id.to_string()))
    }

    pub fn records(&self) -> impl Iterator<Item = &SubjectRecord> {
        self.records.values()
    }

    pub fn days(&self, id: &str, filter: &FilterSpec) -> Result<Vec<DaySummary>, QueryError> {
        Ok(analytics::filter_days(&self.record(id)?.days, filter))
    }

    pub fn metrics(&self, id: &str, filter: &FilterSpec) -> Result<SubjectMetrics, QueryError> {
        let s = &self.settings;
        Ok(subject_metrics(
            &self.record(id)?.data(),
            filter,
            &s.calendar,
            &s.dayparts,
        ))
    }

    pub fn all_metrics(&self, filter: &FilterSpec) -> Vec<SubjectMetrics> {
        let s = &self.settings;
        self.records
            .values()
            .map(|r| subject_metrics(&r.data(), filter, &s.calendar, &s.dayparts))
            .collect()
    }

    pub fn compare(
        &self,
        a: &str,
        b: &str,
        filter: &FilterSpec,
        kinds: &[BiometricKind],
    ) -> Result<ComparisonReport, QueryError> {
        let ra = self.record(a)?;
        let rb = self.record(b)?;
        if a == b {
            return Err(QueryError::SameSubject);
        }
        let s = &self.settings;
        Ok(compare_subjects(
            &ra.data(),
            &rb.data(),
            filter,
            kinds,
            &s.calendar,
            &s.dayparts,
            s.epsilon_hours,
        ))
    }

    pub fn cohort(
        &self,
        gender: Option<Gender>,
        filter: &FilterSpec,
    ) -> Result<CohortStats, QueryError> {
        Ok(cohort_stats(&self.all_metrics(filter), gender)?)
    }

    /// Rules evaluated over all recorded days against the whole cohort.
    pub fn recommendations(
        &self,
        id: &str,
        target_weight_kg: Option<f64>,
    ) -> Result<Vec<Recommendation>, QueryError> {
        let filter = FilterSpec::default();
        let metrics = self.metrics(id, &filter)?;
        let cohort = self.cohort(None, &filter)?;
        Ok(recommend(
            &metrics,
            target_weight_kg,
            &cohort,
            &self.settings.rules,
        ))
    }
}
