//! Everything the dashboard displays, computed from classified epochs and
//! biometric measurements.

mod breakdown;
pub mod calendar;
mod cohort;
mod compare;
mod days;
mod interp;
mod recommend;

use chrono::NaiveDate;
use thiserror::Error;

pub use breakdown::breakdown;
pub use calendar::{CalendarConfig, DayPart, DayPartConfig, WeekendDays};
pub use cohort::{
    afternoon_vigorous_hours, cohort_stats, median, percentile_rank, subject_metrics,
    SubjectMetrics,
};
pub use compare::{biometric_trend, compare_subjects, compare_metrics};
pub use days::{filter_days, summarize_days, FilterSpec, SECONDS_PER_DAY};
pub use interp::sample_biometric_daily;
pub use recommend::{recommend, RuleConfig};

use crate::model::{
    BiometricKind, BiometricMeasurement, ClassifiedEpoch, CohortMetric, DaySummary, Subject,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("subject {subject_id} has {hours:.4} h recorded on {date}; epochs overlap")]
    DayOverflow {
        subject_id: String,
        date: NaiveDate,
        hours: f64,
    },
    #[error("cannot interpolate an empty series")]
    EmptySeries,
    #[error("series dates must be strictly increasing (at {0})")]
    UnsortedSeries(NaiveDate),
    #[error("no subjects in cohort")]
    EmptyCohort,
    #[error("no cohort samples for metric {0}")]
    NoSamples(CohortMetric),
}

/// Borrowed view of everything known about one subject.
#[derive(Debug, Clone, Copy)]
pub struct SubjectData<'a> {
    pub subject: &'a Subject,
    /// Sorted by start time.
    pub epochs: &'a [ClassifiedEpoch],
    /// All recorded days, unfiltered, sorted by date.
    pub days: &'a [DaySummary],
    /// Including derived BMI rows.
    pub measurements: &'a [BiometricMeasurement],
}

impl SubjectData<'_> {
    pub fn id(&self) -> &str {
        &self.subject.id
    }

    /// Date-sorted `(date, value)` pairs of one kind.
    pub fn series(&self, kind: BiometricKind) -> Vec<(NaiveDate, f64)> {
        let mut s: Vec<(NaiveDate, f64)> = self
            .measurements
            .iter()
            .filter(|m| m.kind == kind)
            .map(|m| (m.date, m.value))
            .collect();
        s.sort_by_key(|(d, _)| *d);
        s
    }

    pub fn latest(&self, kind: BiometricKind) -> Option<f64> {
        self.series(kind).last().map(|(_, v)| *v)
    }
}
