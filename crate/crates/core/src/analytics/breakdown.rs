use crate::model::{ActivityLevel, BreakdownAverages, DaySummary, LevelHours};

/// Mean hours per level over weekdays and over weekend days.
pub fn breakdown(summaries: &[DaySummary]) -> BreakdownAverages {
    let mean_of = |weekend: bool| {
        let group: Vec<&DaySummary> = summaries
            .iter()
            .filter(|d| d.is_weekend == weekend)
            .collect();
        if group.is_empty() {
            return (None, 0);
        }
        let n = group.len() as f64;
        let mut sum = LevelHours::default();
        for d in &group {
            for level in ActivityLevel::ALL {
                sum[level] += d.hours[level];
            }
        }
        (Some(sum.map(|h| h / n)), group.len())
    };
    let (weekday, weekday_days) = mean_of(false);
    let (weekend, weekend_days) = mean_of(true);
    BreakdownAverages {
        weekday,
        weekend,
        weekday_days,
        weekend_days,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn day(moderate: f64, is_weekend: bool) -> DaySummary {
        DaySummary {
            subject_id: "1".into(),
            date: "2015-03-01".parse().unwrap(),
            hours: LevelHours {
                moderate,
                ..Default::default()
            },
            is_weekend,
        }
    }

    #[test]
    fn two_point_mean() {
        let b = breakdown(&[day(1.0, false), day(3.0, false)]);
        assert_eq!(b.weekday.unwrap().moderate, 2.0);
        assert_eq!(b.weekday_days, 2);
    }

    #[test]
    fn empty_group_is_absent() {
        let b = breakdown(&[day(1.0, false)]);
        assert_eq!(b.weekend, None);
        assert_eq!(b.weekend_days, 0);
        let b = breakdown(&[]);
        assert_eq!((b.weekday, b.weekend), (None, None));
    }
}
