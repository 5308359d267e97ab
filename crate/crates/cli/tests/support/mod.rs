//! Random valid datasets and brute-force reference computations.
//!
//! The reference side works on raw epochs with integer arithmetic: local
//! dates come from Unix seconds plus a fixed offset, levels from comparing
//! `counts · 60` against `threshold · duration`, and weekdays from the day
//! number. It shares no code with the analytics crate beyond the domain
//! types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use actiview_core::dataset::RawDataset;
use actiview_core::model::{BiometricKind, BiometricMeasurement, Epoch, Gender, Subject};
use chrono::{DateTime, Days, FixedOffset, NaiveDate, TimeZone};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TZ_SECONDS: i64 = 3 * 3600;
/// Friday and Saturday as Monday-based weekday indices.
pub const WEEKEND: [i64; 2] = [4, 5];
pub const CUTS: [u64; 3] = [100, 2296, 4012];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Shape {
    pub max_subjects: usize,
    pub max_days: u32,
    /// Candidate epoch lengths in seconds.
    pub durations: &'static [u32],
    pub gap_prob: f64,
}

pub const COARSE: Shape = Shape {
    max_subjects: 10,
    max_days: 30,
    durations: &[60, 300, 600, 900, 1800, 3600],
    gap_prob: 0.1,
};

pub const FINE: Shape = Shape {
    max_subjects: 1,
    max_days: 1,
    durations: &[15, 30, 60, 60, 120, 300],
    gap_prob: 0.02,
};

fn random_cpm(rng: &mut ChaCha8Rng, lazy: bool) -> u64 {
    if lazy {
        return rng.random_range(0..120);
    }
    match rng.random_range(0..4) {
        0 => rng.random_range(0..100),
        1 => rng.random_range(100..2296),
        2 => rng.random_range(2296..4012),
        _ => rng.random_range(4012..9000),
    }
}

/// Epochs of one subject on `n_days` consecutive local days from `start`,
/// never crossing local midnight at `TZ_SECONDS`, written in mixed offsets.
pub fn random_epochs(
    rng: &mut ChaCha8Rng,
    id: &str,
    start: NaiveDate,
    n_days: u32,
    shape: &Shape,
) -> Vec<Epoch> {
    let tz = FixedOffset::east_opt(TZ_SECONDS as i32).unwrap();
    let offsets = [0, 3 * 3600, -4 * 3600, 5 * 3600 + 1800].map(|s| FixedOffset::east_opt(s).unwrap());
    let mut out = Vec::new();
    for d in 0..n_days {
        let date = start + Days::new(u64::from(d));
        let midnight = tz.from_local_datetime(&date.and_hms_opt(0, 0, 0).unwrap()).unwrap();
        let lazy = rng.random_bool(0.3);
        let mut t: i64 = rng.random_range(0..1800);
        loop {
            let duration = shape.durations[rng.random_range(0..shape.durations.len())];
            if t + i64::from(duration) > 86_400 {
                break;
            }
            let cpm = random_cpm(rng, lazy);
            let start = midnight + chrono::Duration::seconds(t);
            out.push(Epoch {
                subject_id: id.to_string(),
                start: start.with_timezone(&offsets[rng.random_range(0..offsets.len())]),
                duration_s: duration,
                counts: cpm * u64::from(duration) / 60,
            });
            t += i64::from(duration);
            if rng.random_bool(shape.gap_prob) {
                t += rng.random_range(60..5400);
            }
        }
    }
    out
}

/// Weekly weight and body fat, occasional heights and recorded BMIs.
pub fn random_measurements(rng: &mut ChaCha8Rng, id: &str, start: NaiveDate, n_days: u32) -> Vec<BiometricMeasurement> {
    let mut out = Vec::new();
    for week in 0..n_days.div_ceil(7) {
        let date = start + Days::new(u64::from(week * 7 + rng.random_range(0..3)));
        let mut push = |kind, value| {
            out.push(BiometricMeasurement {
                subject_id: id.to_string(),
                date,
                kind,
                value,
            })
        };
        if (week > 0 || rng.random_bool(0.8)) && rng.random_bool(0.4) {
            push(BiometricKind::HeightM, rng.random_range(1.25..1.85));
        }
        if rng.random_bool(0.9) {
            push(BiometricKind::WeightKg, rng.random_range(30.0..110.0));
        }
        if rng.random_bool(0.15) {
            push(BiometricKind::Bmi, rng.random_range(16.0..40.0));
        }
        push(BiometricKind::BodyFatPct, rng.random_range(15.0..50.0));
    }
    out
}

pub fn random_dataset(rng: &mut ChaCha8Rng, shape: &Shape) -> RawDataset {
    let start = NaiveDate::from_ymd_opt(2015, 3, 1).unwrap();
    let mut raw = RawDataset::default();
    let n = rng.random_range(1..=shape.max_subjects);
    for s in 0..n {
        let id = format!("{}", 10 + s);
        raw.subjects.push(Subject {
            id: id.clone(),
            gender: if rng.random_bool(0.5) { Gender::Male } else { Gender::Female },
        });
        let days = rng.random_range(1..=shape.max_days);
        raw.epochs.extend(random_epochs(rng, &id, start, days, shape));
        raw.measurements.extend(random_measurements(rng, &id, start, days));
    }
    raw
}

// ---------------------------------------------------------------------------
// Reference computations.

pub fn local_day_number(ts: &DateTime<FixedOffset>) -> i64 {
    (ts.timestamp() + TZ_SECONDS).div_euclid(86_400)
}

pub fn day_number_to_date(n: i64) -> NaiveDate {
    NaiveDate::from_ymd_opt(1970, 1, 1).unwrap() + chrono::Duration::days(n)
}

pub fn local_hour(ts: &DateTime<FixedOffset>) -> i64 {
    (ts.timestamp() + TZ_SECONDS).rem_euclid(86_400) / 3600
}

pub fn is_weekend_day(n: i64) -> bool {
    // Day 0 (1970-01-01) was a Thursday, index 3.
    WEEKEND.contains(&(n + 3).rem_euclid(7))
}

/// 0 sedentary, 1 light, 2 moderate, 3 vigorous.
pub fn level(counts: u64, duration_s: u32) -> usize {
    let scaled = u128::from(counts) * 60;
    CUTS.iter()
        .filter(|&&c| scaled >= u128::from(c) * u128::from(duration_s))
        .count()
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RefDay {
    pub day: i64,
    pub seconds: [u64; 4],
    pub afternoon_vigorous_s: u64,
}

impl RefDay {
    pub fn hours(&self, level: usize) -> f64 {
        self.seconds[level] as f64 / 3600.0
    }

    pub fn total_hours(&self) -> f64 {
        self.seconds.iter().sum::<u64>() as f64 / 3600.0
    }

    pub fn weekend(&self) -> bool {
        is_weekend_day(self.day)
    }

    pub fn date(&self) -> NaiveDate {
        day_number_to_date(self.day)
    }
}

pub fn reference_days(epochs: &[Epoch]) -> BTreeMap<String, BTreeMap<i64, RefDay>> {
    let mut out: BTreeMap<String, BTreeMap<i64, RefDay>> = BTreeMap::new();
    for e in epochs {
        let n = local_day_number(&e.start);
        let day = out
            .entry(e.subject_id.clone())
            .or_default()
            .entry(n)
            .or_insert(RefDay { day: n, ..Default::default() });
        let l = level(e.counts, e.duration_s);
        day.seconds[l] += u64::from(e.duration_s);
        if l == 3 && (12..18).contains(&local_hour(&e.start)) {
            day.afternoon_vigorous_s += u64::from(e.duration_s);
        }
    }
    out
}

pub fn keep(day: &RefDay, max_sedentary_hours: f64) -> bool {
    day.hours(0) <= max_sedentary_hours
}

pub fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Per-level means of one group, and its size.
pub fn group_means(days: &[RefDay], weekend: bool) -> (Option<[f64; 4]>, usize) {
    let group: Vec<&RefDay> = days.iter().filter(|d| d.weekend() == weekend).collect();
    if group.is_empty() {
        return (None, 0);
    }
    let mut means = [0.0; 4];
    for (l, m) in means.iter_mut().enumerate() {
        *m = group.iter().map(|d| d.hours(l)).sum::<f64>() / group.len() as f64;
    }
    (Some(means), group.len())
}

pub fn mvpa(means: Option<[f64; 4]>) -> Option<f64> {
    means.map(|m| m[2] + m[3])
}

/// Latest BMI by date, recorded or derived from weight and the most recent
/// height on or before that date.
pub fn latest_bmi(measurements: &[BiometricMeasurement], id: &str) -> Option<f64> {
    let mine: Vec<&BiometricMeasurement> = measurements.iter().filter(|m| m.subject_id == id).collect();
    let mut bmi: BTreeMap<NaiveDate, f64> = BTreeMap::new();
    for m in &mine {
        if m.kind == BiometricKind::Bmi {
            bmi.insert(m.date, m.value);
        }
    }
    for w in mine.iter().filter(|m| m.kind == BiometricKind::WeightKg) {
        if bmi.contains_key(&w.date) {
            continue;
        }
        let height = mine
            .iter()
            .filter(|m| m.kind == BiometricKind::HeightM && m.date <= w.date)
            .max_by_key(|m| m.date)
            .map(|m| m.value);
        if let Some(h) = height {
            bmi.insert(w.date, w.value / h / h);
        }
    }
    bmi.into_iter().next_back().map(|(_, v)| v)
}

pub fn brute_median(xs: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n == 0 {
        return None;
    }
    // Selection by counting instead of sorting.
    let kth = |k: usize| {
        *xs.iter()
            .find(|&&x| {
                let below = xs.iter().filter(|&&y| y < x).count();
                let at_most = xs.iter().filter(|&&y| y <= x).count();
                below <= k && k < at_most
            })
            .unwrap()
    };
    Some(if n % 2 == 1 { kth(n / 2) } else { (kth(n / 2 - 1) + kth(n / 2)) / 2.0 })
}

pub fn brute_percentile(xs: &[f64], v: f64) -> f64 {
    let mut score = 0.0;
    for &x in xs {
        if x < v {
            score += 1.0;
        } else if x == v {
            score += 0.5;
        }
    }
    100.0 * score / xs.len() as f64
}

pub fn close(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= tol,
        _ => false,
    }
}
