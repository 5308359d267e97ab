use super::cohort::{subject_metrics, SubjectMetrics};
use super::{CalendarConfig, DayPartConfig, FilterSpec, SubjectData};
use crate::model::{
    BiometricComparison, BiometricKind, BiometricTrend, ComparisonReport, Finding, Side,
};

/// First and latest value of one kind; trend is last minus first.
pub fn biometric_trend(data: &SubjectData<'_>, kind: BiometricKind) -> Option<BiometricTrend> {
    let series = data.series(kind);
    let (first_date, first) = *series.first()?;
    let (latest_date, latest) = *series.last()?;
    Some(BiometricTrend {
        first_date,
        first,
        latest_date,
        latest,
        trend: latest - first,
    })
}

/// Pairwise comparison of two subjects over filtered days.
///
/// Flags:
/// * `{a,b}_more_active_weekend` / `_weekday` when that side's MVPA mean for
///   the group exceeds the other's by more than `epsilon_hours`; both sides
///   need at least one retained day in the group.
/// * `{a,b}_higher_<kind>` when that side's latest value of a requested
///   kind is strictly higher.
#[allow(clippy::too_many_arguments)]
pub fn compare_subjects(
    a: &SubjectData<'_>,
    b: &SubjectData<'_>,
    filter: &FilterSpec,
    kinds: &[BiometricKind],
    cal: &CalendarConfig,
    dayparts: &DayPartConfig,
    epsilon_hours: f64,
) -> ComparisonReport {
    let ma = subject_metrics(a, filter, cal, dayparts);
    let mb = subject_metrics(b, filter, cal, dayparts);
    let biometrics = kinds
        .iter()
        .map(|&kind| BiometricComparison {
            kind,
            a: biometric_trend(a, kind),
            b: biometric_trend(b, kind),
        })
        .collect();
    compare_metrics(&ma, &mb, biometrics, epsilon_hours)
}

/// Assembles the report from already computed per-subject metrics.
pub fn compare_metrics(
    a: &SubjectMetrics,
    b: &SubjectMetrics,
    biometrics: Vec<BiometricComparison>,
    epsilon_hours: f64,
) -> ComparisonReport {
    let mut flags = Vec::new();
    let delta = |x: Option<f64>, y: Option<f64>| Some(x? - y?);
    let weekday_mvpa_delta = delta(a.weekday_mvpa(), b.weekday_mvpa());
    let weekend_mvpa_delta = delta(a.weekend_mvpa(), b.weekend_mvpa());

    let mut activity_flag = |d: Option<f64>, make: fn(Side) -> Finding| {
        let Some(d) = d else { return };
        if d > epsilon_hours {
            flags.push(make(Side::A));
        } else if -d > epsilon_hours {
            flags.push(make(Side::B));
        }
    };
    activity_flag(weekend_mvpa_delta, Finding::MoreActiveWeekend);
    activity_flag(weekday_mvpa_delta, Finding::MoreActiveWeekday);

    for cmp in &biometrics {
        if let (Some(ta), Some(tb)) = (cmp.a, cmp.b) {
            if ta.latest > tb.latest {
                flags.push(Finding::HigherLatest(Side::A, cmp.kind));
            } else if tb.latest > ta.latest {
                flags.push(Finding::HigherLatest(Side::B, cmp.kind));
            }
        }
    }
    flags.sort_by_key(|f| f.code());

    ComparisonReport {
        subject_a: a.subject_id.clone(),
        subject_b: b.subject_id.clone(),
        breakdown_a: a.breakdown.clone(),
        breakdown_b: b.breakdown.clone(),
        biometrics,
        weekday_mvpa_delta,
        weekend_mvpa_delta,
        flags,
    }
}
