use std::collections::BTreeSet;

use chrono::NaiveDate;

use super::{
    breakdown, filter_days, AnalyticsError, CalendarConfig, DayPart, DayPartConfig, FilterSpec,
    SubjectData,
};
use crate::model::{
    ActivityLevel, BiometricKind, BreakdownAverages, CohortMetric, CohortStats, Gender,
    MetricDistribution, MetricSample,
};

/// Per-subject quantities feeding comparisons, cohort statistics and rules.
#[derive(Debug, Clone, PartialEq)]
pub struct SubjectMetrics {
    pub subject_id: String,
    pub gender: Gender,
    /// `None` when the filter retains no day.
    pub breakdown: Option<BreakdownAverages>,
    pub afternoon_vigorous: Option<f64>,
    pub latest_bmi: Option<f64>,
    pub latest_weight_kg: Option<f64>,
}

impl SubjectMetrics {
    pub fn weekday_mvpa(&self) -> Option<f64> {
        self.breakdown.as_ref()?.weekday_mvpa()
    }

    pub fn weekend_mvpa(&self) -> Option<f64> {
        self.breakdown.as_ref()?.weekend_mvpa()
    }

    pub fn get(&self, metric: CohortMetric) -> Option<f64> {
        match metric {
            CohortMetric::WeekdayMvpaHours => self.weekday_mvpa(),
            CohortMetric::WeekendMvpaHours => self.weekend_mvpa(),
            CohortMetric::AfternoonVigorousHours => self.afternoon_vigorous,
            CohortMetric::LatestBmi => self.latest_bmi,
        }
    }
}

pub fn subject_metrics(
    data: &SubjectData<'_>,
    filter: &FilterSpec,
    cal: &CalendarConfig,
    dayparts: &DayPartConfig,
) -> SubjectMetrics {
    let retained = filter_days(data.days, filter);
    let retained_dates: Vec<NaiveDate> = retained.iter().map(|d| d.date).collect();
    SubjectMetrics {
        subject_id: data.subject.id.clone(),
        gender: data.subject.gender,
        breakdown: (!retained.is_empty()).then(|| breakdown(&retained)),
        afternoon_vigorous: afternoon_vigorous_hours(data.epochs, &retained_dates, cal, dayparts),
        latest_bmi: data.latest(BiometricKind::Bmi),
        latest_weight_kg: data.latest(BiometricKind::WeightKg),
    }
}

/// Mean vigorous hours per retained day that start in the afternoon bucket.
///
/// Epochs are attributed by start time, so one starting at 17:59 counts
/// wholly toward the afternoon. `None` when no day is retained.
pub fn afternoon_vigorous_hours(
    epochs: &[crate::model::ClassifiedEpoch],
    retained_dates: &[NaiveDate],
    cal: &CalendarConfig,
    dayparts: &DayPartConfig,
) -> Option<f64> {
    if retained_dates.is_empty() {
        return None;
    }
    let retained: BTreeSet<NaiveDate> = retained_dates.iter().copied().collect();
    let seconds: u64 = epochs
        .iter()
        .filter(|ce| ce.level == ActivityLevel::Vigorous)
        .filter(|ce| {
            let local = cal.local(&ce.epoch.start);
            retained.contains(&local.date_naive())
                && dayparts.part_of(&local) == DayPart::Afternoon
        })
        .map(|ce| u64::from(ce.epoch.duration_s))
        .sum();
    Some(seconds as f64 / 3600.0 / retained.len() as f64)
}

/// Median of a sample; mean of the two middle values for even sizes.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Some(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    })
}

/// Distributions of each cohort metric across the (optionally gender
/// filtered) members. Sample order follows subject id.
pub fn cohort_stats(
    members: &[SubjectMetrics],
    gender: Option<Gender>,
) -> Result<CohortStats, AnalyticsError> {
    let mut selected: Vec<&SubjectMetrics> = members
        .iter()
        .filter(|m| gender.is_none_or(|g| m.gender == g))
        .collect();
    if selected.is_empty() {
        return Err(AnalyticsError::EmptyCohort);
    }
    selected.sort_by(|x, y| x.subject_id.cmp(&y.subject_id));

    let metrics = CohortMetric::ALL
        .into_iter()
        .map(|metric| {
            let samples: Vec<MetricSample> = selected
                .iter()
                .filter_map(|m| {
                    m.get(metric).map(|value| MetricSample {
                        subject_id: m.subject_id.clone(),
                        value,
                    })
                })
                .collect();
            let values: Vec<f64> = samples.iter().map(|s| s.value).collect();
            MetricDistribution {
                metric,
                median: median(&values),
                samples,
            }
        })
        .collect();

    Ok(CohortStats {
        gender,
        subject_ids: selected.iter().map(|m| m.subject_id.clone()).collect(),
        metrics,
    })
}

/// Mid-rank percentile: `100 · (#{x < v} + ½·#{x = v}) / n`.
pub fn percentile_rank(
    stats: &CohortStats,
    metric: CohortMetric,
    value: f64,
) -> Result<f64, AnalyticsError> {
    let samples = stats
        .metric(metric)
        .map(|d| d.samples.as_slice())
        .unwrap_or_default();
    if samples.is_empty() {
        return Err(AnalyticsError::NoSamples(metric));
    }
    let below = samples.iter().filter(|s| s.value < value).count() as f64;
    let equal = samples.iter().filter(|s| s.value == value).count() as f64;
    Ok(100.0 * (below + 0.5 * equal) / samples.len() as f64)
}
