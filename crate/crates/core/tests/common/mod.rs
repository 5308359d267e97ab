#![allow(dead_code)]

use actiview_core::analytics::CalendarConfig;
use actiview_core::dataset::RawDataset;
use actiview_core::model::{BiometricKind, BiometricMeasurement, Epoch, Gender, Subject};
use chrono::{Days, FixedOffset, NaiveDate, TimeZone};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid dataset: up to `max_subjects` subjects with up to `max_days`
/// local days each. Epochs have mixed lengths and gaps and never cross local
/// midnight in `cal`'s zone. Timestamps are written in assorted offsets.
pub fn random_dataset(
    rng: &mut ChaCha8Rng,
    max_subjects: usize,
    max_days: u32,
    cal: &CalendarConfig,
) -> RawDataset {
    let offsets = [0, 3 * 3600, -5 * 3600, 5 * 3600 + 1800]
        .map(|s| FixedOffset::east_opt(s).unwrap());
    let start = NaiveDate::from_ymd_opt(2015, 3, 1).unwrap();
    let n_subjects = rng.random_range(1..=max_subjects);
    let mut raw = RawDataset::default();
    for s in 0..n_subjects {
        let id = format!("s{s}");
        raw.subjects.push(Subject {
            id: id.clone(),
            gender: if rng.random_bool(0.5) {
                Gender::Male
            } else {
                Gender::Female
            },
        });
        let n_days = rng.random_range(1..=max_days);
        for d in 0..n_days {
            let date = start + Days::new(u64::from(d));
            let midnight = cal
                .timezone
                .from_local_datetime(&date.and_hms_opt(0, 0, 0).unwrap())
                .unwrap();
            // Mostly-sedentary days sometimes, to exercise the filter.
            let lazy = rng.random_bool(0.3);
            let mut t: i64 = rng.random_range(0..3600);
            loop {
                let duration = [15u32, 30, 60, 60, 60, 120, 300][rng.random_range(0..7)];
                if t + i64::from(duration) > 86_400 {
                    break;
                }
                let ts = midnight + chrono::Duration::seconds(t);
                let offset = offsets[rng.random_range(0..offsets.len())];
                let cpm_cap = if lazy { 150 } else { 8000 };
                let cpm = rng.random_range(0..cpm_cap);
                raw.epochs.push(Epoch {
                    subject_id: id.clone(),
                    start: ts.with_timezone(&offset),
                    duration_s: duration,
                    counts: cpm * u64::from(duration) / 60,
                });
                t += i64::from(duration);
                if rng.random_bool(0.05) {
                    t += rng.random_range(60..7200);
                }
            }
        }
        for week in 0..n_days.div_ceil(7) {
            let date = start + Days::new(u64::from(week * 7));
            let mut push = |kind, value| {
                raw.measurements.push(BiometricMeasurement {
                    subject_id: id.clone(),
                    date,
                    kind,
                    value,
                })
            };
            if week == 0 || rng.random_bool(0.3) {
                push(BiometricKind::HeightM, rng.random_range(1.3..1.8));
            }
            push(BiometricKind::WeightKg, rng.random_range(35.0..95.0));
            if rng.random_bool(0.2) {
                push(BiometricKind::Bmi, rng.random_range(18.0..36.0));
            }
            push(BiometricKind::BodyFatPct, rng.random_range(15.0..45.0));
        }
    }
    raw
}
