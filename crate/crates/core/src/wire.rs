//! JSON payloads of the HTTP API.
//!
//! Hours are rounded to 4 decimal places and dates are `YYYY-MM-DD`.
//! Biometric values are passed through unrounded. Absent values serialize as
//! `null`. The CLI's `report --json` uses [`comparison`] so its output is the
//! same document the compare endpoint returns.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::analytics::calendar::format_offset;
use crate::dataset::Dataset;
use crate::model::{
    BreakdownAverages, CohortStats, ComparisonReport, DaySummary, LevelHours, Recommendation,
    Subject,
};

pub fn round4(x: f64) -> f64 {
    let r = (x * 10_000.0).round() / 10_000.0;
    // Avoid emitting -0.0.
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round4_opt(x: Option<f64>) -> Option<f64> {
    x.map(round4)
}

pub fn date_string(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectJson {
    pub id: String,
    pub gender: String,
}

pub fn subjects(list: &[&Subject]) -> Vec<SubjectJson> {
    list.iter()
        .map(|s| SubjectJson {
            id: s.id.clone(),
            gender: s.gender.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoursJson {
    pub sedentary: f64,
    pub light: f64,
    pub moderate: f64,
    pub vigorous: f64,
}

impl From<&LevelHours> for HoursJson {
    fn from(h: &LevelHours) -> Self {
        HoursJson {
            sedentary: round4(h.sedentary),
            light: round4(h.light),
            moderate: round4(h.moderate),
            vigorous: round4(h.vigorous),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DayJson {
    pub date: String,
    pub weekend: bool,
    pub hours: HoursJson,
}

pub fn days(list: &[DaySummary]) -> Vec<DayJson> {
    list.iter()
        .map(|d| DayJson {
            date: date_string(d.date),
            weekend: d.is_weekend,
            hours: (&d.hours).into(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub sedentary: Option<f64>,
    pub light: Option<f64>,
    pub moderate: Option<f64>,
    pub vigorous: Option<f64>,
    pub days: usize,
}

fn group(means: Option<&LevelHours>, days: usize) -> GroupJson {
    let pick = |f: fn(&LevelHours) -> f64| means.map(|h| round4(f(h)));
    GroupJson {
        sedentary: pick(|h| h.sedentary),
        light: pick(|h| h.light),
        moderate: pick(|h| h.moderate),
        vigorous: pick(|h| h.vigorous),
        days,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakdownJson {
    pub weekday: GroupJson,
    pub weekend: GroupJson,
}

pub fn breakdown(b: &BreakdownAverages) -> BreakdownJson {
    BreakdownJson {
        weekday: group(b.weekday.as_ref(), b.weekday_days),
        weekend: group(b.weekend.as_ref(), b.weekend_days),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub date: String,
    pub value: f64,
}

pub fn points(series: &[(NaiveDate, f64)]) -> Vec<PointJson> {
    series
        .iter()
        .map(|(d, v)| PointJson {
            date: date_string(*d),
            value: *v,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KindSeriesJson {
    pub measurements: Vec<PointJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub daily: Option<Vec<PointJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendJson {
    pub first_date: String,
    pub first: f64,
    pub latest_date: String,
    pub latest: f64,
    pub trend: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiometricPairJson {
    pub a: Option<TrendJson>,
    pub b: Option<TrendJson>,
    /// Latest A minus latest B.
    pub latest_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltasJson {
    pub weekday_mvpa_hours: Option<f64>,
    pub weekend_mvpa_hours: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonJson {
    pub subject_a: String,
    pub subject_b: String,
    pub breakdown_a: Option<BreakdownJson>,
    pub breakdown_b: Option<BreakdownJson>,
    pub biometric_latest: BTreeMap<String, BiometricPairJson>,
    pub deltas: DeltasJson,
    pub flags: Vec<String>,
}

pub fn comparison(r: &ComparisonReport) -> ComparisonJson {
    let trend = |t: &crate::model::BiometricTrend| TrendJson {
        first_date: date_string(t.first_date),
        first: t.first,
        latest_date: date_string(t.latest_date),
        latest: t.latest,
        trend: t.trend,
    };
    ComparisonJson {
        subject_a: r.subject_a.clone(),
        subject_b: r.subject_b.clone(),
        breakdown_a: r.breakdown_a.as_ref().map(breakdown),
        breakdown_b: r.breakdown_b.as_ref().map(breakdown),
        biometric_latest: r
            .biometrics
            .iter()
            .map(|c| {
                (
                    c.kind.to_string(),
                    BiometricPairJson {
                        a: c.a.as_ref().map(trend),
                        b: c.b.as_ref().map(trend),
                        latest_delta: c.latest_delta(),
                    },
                )
            })
            .collect(),
        deltas: DeltasJson {
            weekday_mvpa_hours: round4_opt(r.weekday_mvpa_delta),
            weekend_mvpa_hours: round4_opt(r.weekend_mvpa_delta),
        },
        flags: r.flags.iter().map(|f| f.code()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub subject: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub samples: Vec<SampleJson>,
    pub median: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortJson {
    pub gender: Option<String>,
    pub subjects: Vec<String>,
    pub metrics: BTreeMap<String, DistributionJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub percentiles: Option<PercentilesJson>,
}

/// Mid-rank percentile of one subject for each metric it has a value for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PercentilesJson {
    pub subject: String,
    pub ranks: BTreeMap<String, Option<f64>>,
}

pub fn cohort(stats: &CohortStats) -> CohortJson {
    CohortJson {
        gender: stats.gender.map(|g| g.to_string()),
        subjects: stats.subject_ids.clone(),
        metrics: stats
            .metrics
            .iter()
            .map(|d| {
                let fmt = |v: f64| if d.metric.is_hours() { round4(v) } else { v };
                (
                    d.metric.to_string(),
                    DistributionJson {
                        samples: d
                            .samples
                            .iter()
                            .map(|s| SampleJson {
                                subject: s.subject_id.clone(),
                                value: fmt(s.value),
                            })
                            .collect(),
                        median: d.median.map(fmt),
                    },
                )
            })
            .collect(),
        percentiles: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricJson {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationJson {
    pub code: String,
    pub message: String,
    pub metric: MetricJson,
}

pub fn recommendations(list: &[Recommendation]) -> Vec<RecommendationJson> {
    list.iter()
        .map(|r| RecommendationJson {
            code: r.code.clone(),
            message: r.message.clone(),
            metric: MetricJson {
                name: r.metric.name.clone(),
                value: round4(r.metric.value),
                reference: round4_opt(r.metric.reference),
            },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DateRangeJson {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMetaJson {
    pub subjects: usize,
    pub epochs: usize,
    pub measurements: usize,
    pub date_range: Option<DateRangeJson>,
    pub loaded_at: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutPointsJson {
    pub light_cpm: f64,
    pub moderate_cpm: f64,
    pub vigorous_cpm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalendarJson {
    pub timezone: String,
    pub weekend_days: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagsJson {
    pub epsilon_hours: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RulesJson {
    pub weekend_ratio: f64,
    pub weekend_activity: bool,
    pub afternoon_vigorous: bool,
    pub target_weight: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub cutpoints: CutPointsJson,
    pub calendar: CalendarJson,
    pub flags: FlagsJson,
    pub rules: RulesJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaJson {
    pub dataset: DatasetMetaJson,
    pub config: ConfigJson,
}

pub fn meta(ds: &Dataset, loaded_at: &str) -> MetaJson {
    let s = ds.settings();
    MetaJson {
        dataset: DatasetMetaJson {
            subjects: ds.subject_count(),
            epochs: ds.epoch_count(),
            measurements: ds.measurement_count(),
            date_range: ds.date_range().map(|(from, to)| DateRangeJson {
                from: date_string(from),
                to: date_string(to),
            }),
            loaded_at: loaded_at.to_string(),
        },
        config: ConfigJson {
            cutpoints: CutPointsJson {
                light_cpm: s.cutpoints.light_cpm(),
                moderate_cpm: s.cutpoints.moderate_cpm(),
                vigorous_cpm: s.cutpoints.vigorous_cpm(),
            },
            calendar: CalendarJson {
                timezone: format_offset(&s.calendar.timezone),
                weekend_days: s
                    .calendar
                    .weekend_days
                    .names()
                    .into_iter()
                    .map(String::from)
                    .collect(),
            },
            flags: FlagsJson {
                epsilon_hours: s.epsilon_hours,
            },
            rules: RulesJson {
                weekend_ratio: s.rules.weekend_ratio,
                weekend_activity: s.rules.weekend_activity,
                afternoon_vigorous: s.rules.afternoon_vigorous,
                target_weight: s.rules.target_weight,
            },
        },
    }
}
