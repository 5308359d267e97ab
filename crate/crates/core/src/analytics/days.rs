use std::collections::BTreeMap;

use chrono::NaiveDate;

use super::calendar::CalendarConfig;
use super::AnalyticsError;
use crate::model::{ActivityLevel, ClassifiedEpoch, DaySummary, LevelHours};

pub const SECONDS_PER_DAY: u64 = 86_400;

/// Which days survive the sedentary-hours slider and the time window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    max_sedentary_hours: f64,
    from: Option<NaiveDate>,
    to: Option<NaiveDate>,
}

impl FilterSpec {
    pub fn new(
        max_sedentary_hours: f64,
        from: Option<NaiveDate>,
        to: Option<NaiveDate>,
    ) -> Result<Self, AnalyticsError> {
        if !(0.0..=24.0).contains(&max_sedentary_hours) {
            return Err(AnalyticsError::InvalidFilter(format!(
                "max_sedentary_hours must be within [0, 24], got {max_sedentary_hours}"
            )));
        }
        if let (Some(f), Some(t)) = (from, to) {
            if f > t {
                return Err(AnalyticsError::InvalidFilter(format!(
                    "window start {f} is after end {t}"
                )));
            }
        }
        Ok(FilterSpec {
            max_sedentary_hours,
            from,
            to,
        })
    }

    pub fn with_max_sedentary_hours(max_sedentary_hours: f64) -> Result<Self, AnalyticsError> {
        FilterSpec::new(max_sedentary_hours, None, None)
    }

    pub fn max_sedentary_hours(&self) -> f64 {
        self.max_sedentary_hours
    }

    pub fn from(&self) -> Option<NaiveDate> {
        self.from
    }

    pub fn to(&self) -> Option<NaiveDate> {
        self.to
    }

    pub fn in_window(&self, date: NaiveDate) -> bool {
        self.from.is_none_or(|f| date >= f) && self.to.is_none_or(|t| date <= t)
    }

    /// A day is dropped only when its sedentary hours are strictly above the
    /// threshold.
    pub fn keeps(&self, day: &DaySummary) -> bool {
        day.hours.sedentary <= self.max_sedentary_hours && self.in_window(day.date)
    }
}

impl Default for FilterSpec {
    /// Threshold 24 h, no window: keeps everything.
    fn default() -> Self {
        FilterSpec {
            max_sedentary_hours: 24.0,
            from: None,
            to: None,
        }
    }
}

/// Groups epochs by subject and the local date of their start time.
///
/// Each epoch counts wholly toward the date it starts on. Seconds are summed
/// as integers per level and converted to hours once, so the level hours of
/// a day add up to its recorded time.
pub fn summarize_days(
    epochs: &[ClassifiedEpoch],
    cal: &CalendarConfig,
) -> Result<Vec<DaySummary>, AnalyticsError> {
    let mut seconds: BTreeMap<(&str, NaiveDate), [u64; 4]> = BTreeMap::new();
    for ce in epochs {
        let date = cal.local_date(&ce.epoch.start);
        let slot = seconds
            .entry((ce.epoch.subject_id.as_str(), date))
            .or_default();
        slot[ce.level.index()] += u64::from(ce.epoch.duration_s);
    }

    seconds
        .into_iter()
        .map(|((subject_id, date), secs)| {
            let total: u64 = secs.iter().sum();
            if total > SECONDS_PER_DAY {
                return Err(AnalyticsError::DayOverflow {
                    subject_id: subject_id.to_string(),
                    date,
                    hours: total as f64 / 3600.0,
                });
            }
            let mut hours = LevelHours::default();
            for level in ActivityLevel::ALL {
                hours[level] = secs[level.index()] as f64 / 3600.0;
            }
            Ok(DaySummary {
                subject_id: subject_id.to_string(),
                date,
                hours,
                is_weekend: cal.is_weekend(date),
            })
        })
        .collect()
}

pub fn filter_days(summaries: &[DaySummary], filter: &FilterSpec) -> Vec<DaySummary> {
    summaries
        .iter()
        .filter(|d| filter.keeps(d))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use chrono::{DateTime, Duration};

    use super::*;
    use crate::model::Epoch;

    fn ce(start: &str, duration_s: u32, level: ActivityLevel) -> ClassifiedEpoch {
        ClassifiedEpoch {
            epoch: Epoch {
                subject_id: "1".into(),
                start: DateTime::parse_from_rfc3339(start).unwrap(),
                duration_s,
                counts: 0,
            },
            level,
        }
    }

    fn day(date: &str, sedentary: f64) -> DaySummary {
        DaySummary {
            subject_id: "1".into(),
            date: date.parse().unwrap(),
            hours: LevelHours {
                sedentary,
                ..Default::default()
            },
            is_weekend: false,
        }
    }

    #[test]
    fn single_epoch() {
        let out = summarize_days(
            &[ce("2015-03-01T10:00:00+03:00", 60, ActivityLevel::Sedentary)],
            &CalendarConfig::default(),
        )
        .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].hours.sedentary, 1.0 / 60.0);
        assert_eq!(out[0].hours.light, 0.0);
        assert_eq!(out[0].hours.mvpa(), 0.0);
    }

    #[test]
    fn alternating_full_day() {
        let start = DateTime::parse_from_rfc3339("2015-03-01T00:00:00+03:00").unwrap();
        let epochs: Vec<ClassifiedEpoch> = (0..1440)
            .map(|i| ClassifiedEpoch {
                epoch: Epoch {
                    subject_id: "1".into(),
                    start: start + Duration::minutes(i),
                    duration_s: 60,
                    counts: 0,
                },
                level: if i % 2 == 0 {
                    ActivityLevel::Sedentary
                } else {
                    ActivityLevel::Light
                },
            })
            .collect();
        // Oracle: count minutes per level directly.
        let sed_minutes = epochs
            .iter()
            .filter(|e| e.level == ActivityLevel::Sedentary)
            .count();
        let light_minutes = epochs.len() - sed_minutes;
        assert_eq!((sed_minutes, light_minutes), (720, 720));

        let out = summarize_days(&epochs, &CalendarConfig::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].hours.sedentary, sed_minutes as f64 / 60.0);
        assert_eq!(out[0].hours.light, light_minutes as f64 / 60.0);
        assert_eq!(out[0].hours.sedentary, 12.0);
        assert_eq!(out[0].hours.total(), 24.0);
    }

    #[test]
    fn empty_input() {
        assert!(summarize_days(&[], &CalendarConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn dates_use_local_start_and_are_sorted() {
        let cal = CalendarConfig::default();
        let out = summarize_days(
            &[
                // 2015-03-06 in +03:00, a Friday.
                ce("2015-03-05T21:30:00Z", 60, ActivityLevel::Light),
                ce("2015-03-05T10:00:00+03:00", 60, ActivityLevel::Light),
            ],
            &cal,
        )
        .unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].date.to_string(), "2015-03-05");
        assert!(!out[0].is_weekend);
        assert_eq!(out[1].date.to_string(), "2015-03-06");
        assert!(out[1].is_weekend);
    }

    #[test]
    fn overflowing_day_is_an_error() {
        let err = summarize_days(
            &[
                ce("2015-03-01T00:00:00+03:00", 86_400, ActivityLevel::Sedentary),
                ce("2015-03-01T23:59:00+03:00", 60, ActivityLevel::Sedentary),
            ],
            &CalendarConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, AnalyticsError::DayOverflow { .. }));
    }

    #[test]
    fn filter_threshold_is_exclusive() {
        let days = vec![day("2015-03-01", 20.0), day("2015-03-02", 16.0)];
        let f = FilterSpec::with_max_sedentary_hours(16.0).unwrap();
        let kept = filter_days(&days, &f);
        assert_eq!(kept, vec![days[1].clone()]);
        assert_eq!(filter_days(&days, &FilterSpec::default()), days);
    }

    #[test]
    fn filter_window_is_inclusive() {
        let days = vec![
            day("2015-03-01", 1.0),
            day("2015-03-02", 1.0),
            day("2015-03-03", 1.0),
        ];
        let d = |s: &str| Some(s.parse().unwrap());
        let f = FilterSpec::new(24.0, d("2015-03-02"), d("2015-03-02")).unwrap();
        assert_eq!(filter_days(&days, &f), vec![days[1].clone()]);
        let f = FilterSpec::new(24.0, d("2015-03-02"), None).unwrap();
        assert_eq!(filter_days(&days, &f).len(), 2);
    }

    #[test]
    fn filter_spec_validation() {
        assert!(FilterSpec::with_max_sedentary_hours(-0.1).is_err());
        assert!(FilterSpec::with_max_sedentary_hours(24.1).is_err());
        assert!(FilterSpec::with_max_sedentary_hours(f64::NAN).is_err());
        let d = |s: &str| Some(s.parse().unwrap());
        assert!(FilterSpec::new(10.0, d("2015-03-02"), d("2015-03-01")).is_err());
    }
}
