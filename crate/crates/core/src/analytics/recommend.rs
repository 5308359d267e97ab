use super::SubjectMetrics;
use crate::model::{CohortMetric, CohortStats, Evidence, Recommendation};

pub const WEEKEND_ACTIVITY: &str = "weekend_activity";
pub const AFTERNOON_VIGOROUS: &str = "afternoon_vigorous";
pub const TARGET_WEIGHT: &str = "target_weight";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleConfig {
    /// Weekend MVPA below `weekday MVPA × weekend_ratio` triggers the
    /// weekend rule.
    pub weekend_ratio: f64,
    pub weekend_activity: bool,
    pub afternoon_vigorous: bool,
    pub target_weight: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            weekend_ratio: 0.8,
            weekend_activity: true,
            afternoon_vigorous: true,
            target_weight: true,
        }
    }
}

/// Evaluates the three activity rules independently. A rule whose inputs
/// are missing is skipped.
pub fn recommend(
    subject: &SubjectMetrics,
    target_weight_kg: Option<f64>,
    cohort: &CohortStats,
    cfg: &RuleConfig,
) -> Vec<Recommendation> {
    let mut out = Vec::new();

    if cfg.weekend_activity {
        if let (Some(weekend), Some(weekday)) = (subject.weekend_mvpa(), subject.weekday_mvpa()) {
            if weekend < weekday * cfg.weekend_ratio {
                out.push(Recommendation {
                    code: WEEKEND_ACTIVITY.into(),
                    message: format!(
                        "Weekend moderate-to-vigorous activity averages {weekend:.2} h/day \
                         against {weekday:.2} h/day on weekdays; plan active weekend outings."
                    ),
                    metric: Evidence {
                        name: CohortMetric::WeekendMvpaHours.as_str().into(),
                        value: weekend,
                        reference: Some(weekday),
                    },
                });
            }
        }
    }

    if cfg.afternoon_vigorous {
        let median = cohort.median(CohortMetric::AfternoonVigorousHours);
        if let (Some(value), Some(median)) = (subject.afternoon_vigorous, median) {
            if value < median {
                out.push(Recommendation {
                    code: AFTERNOON_VIGOROUS.into(),
                    message: format!(
                        "Afternoon vigorous activity averages {value:.2} h/day, below the \
                         group median of {median:.2} h/day; add vigorous play in the afternoon."
                    ),
                    metric: Evidence {
                        name: CohortMetric::AfternoonVigorousHours.as_str().into(),
                        value,
                        reference: Some(median),
                    },
                });
            }
        }
    }

    if cfg.target_weight {
        if let (Some(target), Some(latest)) = (target_weight_kg, subject.latest_weight_kg) {
            if latest > target {
                let gap = latest - target;
                out.push(Recommendation {
                    code: TARGET_WEIGHT.into(),
                    message: format!(
                        "Latest weight {latest:.1} kg is {gap:.1} kg above the {target:.1} kg target."
                    ),
                    metric: Evidence {
                        name: "weight_gap_kg".into(),
                        value: gap,
                        reference: Some(target),
                    },
                });
            }
        }
    }

    out
}
