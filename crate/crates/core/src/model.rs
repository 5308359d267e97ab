//! Domain values shared by every stage of the pipeline.
//!
//! Everything here is an immutable value once built. Invariants that span
//! several values (unique ids, non-overlapping epochs, one measurement per
//! subject/date/kind) are checked by [`crate::validate`].

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use chrono::{DateTime, FixedOffset, NaiveDate};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {what} `{token}`")]
pub struct UnknownName {
    pub what: &'static str,
    pub token: String,
}

/// Activity intensity, ordered from least to most intense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivityLevel {
    Sedentary,
    Light,
    Moderate,
    Vigorous,
}

impl ActivityLevel {
    pub const ALL: [ActivityLevel; 4] = [
        ActivityLevel::Sedentary,
        ActivityLevel::Light,
        ActivityLevel::Moderate,
        ActivityLevel::Vigorous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ActivityLevel::Sedentary => "sedentary",
            ActivityLevel::Light => "light",
            ActivityLevel::Moderate => "moderate",
            ActivityLevel::Vigorous => "vigorous",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Moderate or vigorous.
    pub fn is_mvpa(self) -> bool {
        self >= ActivityLevel::Moderate
    }
}

impl fmt::Display for ActivityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ActivityLevel {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActivityLevel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| UnknownName {
                what: "activity level",
                token: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "male",
            Gender::Female => "female",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = UnknownName;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "male" => Ok(Gender::Male),
            "female" => Ok(Gender::Female),
            _ => Err(UnknownName {
                what: "gender",
                token: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub id: String,
    pub gender: Gender,
}

/// One accelerometer sampling interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Epoch {
    pub subject_id: String,
    /// Start instant; the offset it was recorded with is kept for export.
    pub start: DateTime<FixedOffset>,
    pub duration_s: u32,
    pub counts: u64,
}

impl Epoch {
    pub fn end(&self) -> DateTime<FixedOffset> {
        self.start + chrono::Duration::seconds(i64::from(self.duration_s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedEpoch {
    pub epoch: Epoch,
    pub level: ActivityLevel,
}

/// Hours per activity level.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LevelHours {
    pub sedentary: f64,
    pub light: f64,
    pub moderate: f64,
    pub vigorous: f64,
}

impl LevelHours {
    pub fn total(&self) -> f64 {
        self.sedentary + self.light + self.moderate + self.vigorous
    }

    pub fn mvpa(&self) -> f64 {
        self.moderate + self.vigorous
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> LevelHours {
        LevelHours {
            sedentary: f(self.sedentary),
            light: f(self.light),
            moderate: f(self.moderate),
            vigorous: f(self.vigorous),
        }
    }
}

impl Index<ActivityLevel> for LevelHours {
    type Output = f64;

    fn index(&self, level: ActivityLevel) -> &f64 {
        match level {
            ActivityLevel::Sedentary => &self.sedentary,
            ActivityLevel::Light => &self.light,
            ActivityLevel::Moderate => &self.moderate,
            ActivityLevel::Vigorous => &self.vigorous,
        }
    }
}

impl IndexMut<ActivityLevel> for LevelHours {
    fn index_mut(&mut self, level: ActivityLevel) -> &mut f64 {
        match level {
            ActivityLevel::Sedentary => &mut self.sedentary,
            ActivityLevel::Light => &mut self.light,
            ActivityLevel::Moderate => &mut self.moderate,
            ActivityLevel::Vigorous => &mut self.vigorous,
        }
    }
}

/// Hours spent at each level on one local calendar day.
#[derive(Debug, Clone, PartialEq)]
pub struct DaySummary {
    pub subject_id: String,
    pub date: NaiveDate,
    pub hours: LevelHours,
    pub is_weekend: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiometricKind {
    HeightM,
    WeightKg,
    Bmi,
    BodyFatPct,
    WaistCm,
    SystolicMmhg,
    DiastolicMmhg,
}

impl BiometricKind {
    pub const ALL: [BiometricKind; 7] = [
        BiometricKind::HeightM,
        BiometricKind::WeightKg,
        BiometricKind::Bmi,
        BiometricKind::BodyFatPct,
        BiometricKind::WaistCm,
        BiometricKind::SystolicMmhg,
        BiometricKind::DiastolicMmhg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BiometricKind::HeightM => "height_m",
            BiometricKind::WeightKg => "weight_kg",
            BiometricKind::Bmi => "bmi",
            BiometricKind::BodyFatPct => "body_fat_pct",
            BiometricKind::WaistCm => "waist_cm",
            BiometricKind::SystolicMmhg => "systolic_mmhg",
            BiometricKind::DiastolicMmhg => "diastolic_mmhg",
        }
    }

    /// Open interval of admissible values, beyond plain positivity.
    pub fn valid_range(self) -> Option<(f64, f64)> {
        match self {
            BiometricKind::BodyFatPct => Some((0.0, 100.0)),
            BiometricKind::HeightM => Some((0.3, 2.5)),
            _ => None,
        }
    }
}

impl fmt::Display for BiometricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BiometricKind {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BiometricKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownName {
                what: "biometric kind",
                token: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiometricMeasurement {
    pub subject_id: String,
    pub date: NaiveDate,
    pub kind: BiometricKind,
    pub value: f64,
}

/// Mean hours per level for weekdays and weekend days.
///
/// A group with no days has `None` means rather than zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakdownAverages {
    pub weekday: Option<LevelHours>,
    pub weekend: Option<LevelHours>,
    pub weekday_days: usize,
    pub weekend_days: usize,
}

impl BreakdownAverages {
    pub fn weekday_mvpa(&self) -> Option<f64> {
        self.weekday.as_ref().map(LevelHours::mvpa)
    }

    pub fn weekend_mvpa(&self) -> Option<f64> {
        self.weekend.as_ref().map(LevelHours::mvpa)
    }
}

/// Which side of a two-subject comparison a finding is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Side::A => "a",
            Side::B => "b",
        }
    }
}

/// Qualitative finding attached to a [`ComparisonReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Finding {
    /// Weekend MVPA mean exceeds the other subject's by more than epsilon.
    MoreActiveWeekend(Side),
    /// Weekday MVPA mean exceeds the other subject's by more than epsilon.
    MoreActiveWeekday(Side),
    /// Latest value of the biometric is strictly higher.
    HigherLatest(Side, BiometricKind),
}

impl Finding {
    pub fn side(self) -> Side {
        match self {
            Finding::MoreActiveWeekend(s)
            | Finding::MoreActiveWeekday(s)
            | Finding::HigherLatest(s, _) => s,
        }
    }

    pub fn mirrored(self) -> Finding {
        match self {
            Finding::MoreActiveWeekend(s) => Finding::MoreActiveWeekend(s.other()),
            Finding::MoreActiveWeekday(s) => Finding::MoreActiveWeekday(s.other()),
            Finding::HigherLatest(s, k) => Finding::HigherLatest(s.other(), k),
        }
    }

    /// Wire name, e.g. `a_more_active_weekend` or `b_higher_bmi`.
    pub fn code(self) -> String {
        match self {
            Finding::MoreActiveWeekend(s) => format!("{}_more_active_weekend", s.prefix()),
            Finding::MoreActiveWeekday(s) => format!("{}_more_active_weekday", s.prefix()),
            Finding::HigherLatest(s, k) => format!("{}_higher_{}", s.prefix(), k),
        }
    }
}

/// Latest value and last-minus-first change of one biometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiometricTrend {
    pub first_date: NaiveDate,
    pub first: f64,
    pub latest_date: NaiveDate,
    pub latest: f64,
    pub trend: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiometricComparison {
    pub kind: BiometricKind,
    pub a: Option<BiometricTrend>,
    pub b: Option<BiometricTrend>,
}

impl BiometricComparison {
    /// Latest A minus latest B.
    pub fn latest_delta(&self) -> Option<f64> {
        Some(self.a?.latest - self.b?.latest)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub subject_a: String,
    pub subject_b: String,
    /// `None` when no day of that subject survives the filter.
    pub breakdown_a: Option<BreakdownAverages>,
    pub breakdown_b: Option<BreakdownAverages>,
    pub biometrics: Vec<BiometricComparison>,
    /// A minus B, weekday MVPA mean hours.
    pub weekday_mvpa_delta: Option<f64>,
    /// A minus B, weekend MVPA mean hours.
    pub weekend_mvpa_delta: Option<f64>,
    /// Sorted by wire code.
    pub flags: Vec<Finding>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub name: String,
    pub value: f64,
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recommendation {
    pub code: String,
    pub message: String,
    pub metric: Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CohortMetric {
    WeekdayMvpaHours,
    WeekendMvpaHours,
    AfternoonVigorousHours,
    LatestBmi,
}

impl CohortMetric {
    pub const ALL: [CohortMetric; 4] = [
        CohortMetric::WeekdayMvpaHours,
        CohortMetric::WeekendMvpaHours,
        CohortMetric::AfternoonVigorousHours,
        CohortMetric::LatestBmi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CohortMetric::WeekdayMvpaHours => "weekday_mvpa_hours",
            CohortMetric::WeekendMvpaHours => "weekend_mvpa_hours",
            CohortMetric::AfternoonVigorousHours => "afternoon_vigorous_hours",
            CohortMetric::LatestBmi => "latest_bmi",
        }
    }

    pub fn is_hours(self) -> bool {
        !matches!(self, CohortMetric::LatestBmi)
    }
}

impl fmt::Display for CohortMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CohortMetric {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CohortMetric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| UnknownName {
                what: "cohort metric",
                token: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSample {
    pub subject_id: String,
    pub value: f64,
}

/// Samples of one metric across a cohort. Subjects lacking the metric
/// (no retained days in a group, no BMI) contribute no sample.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricDistribution {
    pub metric: CohortMetric,
    /// Ordered by subject id.
    pub samples: Vec<MetricSample>,
    pub median: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CohortStats {
    pub gender: Option<Gender>,
    pub subject_ids: Vec<String>,
    pub metrics: Vec<MetricDistribution>,
}

impl CohortStats {
    pub fn metric(&self, metric: CohortMetric) -> Option<&MetricDistribution> {
        self.metrics.iter().find(|d| d.metric == metric)
    }

    pub fn median(&self, metric: CohortMetric) -> Option<f64> {
        self.metric(metric).and_then(|d| d.median)
    }
}
