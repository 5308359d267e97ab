//! Deterministic synthetic cohorts.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, consumed in a fixed order: subject attributes first, then
//! per subject, per day, the non-wear draw followed by one count draw per
//! minute, then biometrics. Identical arguments give byte-identical files.
//!
//! Counts for a worn minute are drawn from an exponential distribution whose
//! mean depends on the archetype, the day-part and whether the day is a
//! weekend day. A non-wear day is 1440 zero-count minutes.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use chrono::{Days, NaiveDate, TimeZone, Timelike};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use thiserror::Error;

use crate::analytics::{CalendarConfig, DayPart, DayPartConfig};
use crate::ingest::{
    write_actigraphy, write_biometrics, write_subjects, ACTIGRAPHY_FILE, BIOMETRICS_FILE,
    SUBJECTS_FILE,
};
use crate::model::{BiometricKind, BiometricMeasurement, Epoch, Gender, Subject, UnknownName};

pub const EPOCH_SECONDS: u32 = 60;
const MINUTES_PER_DAY: u32 = 1440;

pub const GOLDEN_SEED: u64 = 84_082;
pub const GOLDEN_DAYS: u32 = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("cohort spec is empty")]
    EmptySpec,
    #[error("n_days must be at least 1")]
    NoDays,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Archetype {
    WeekendActive,
    WeekdayActive,
    MostlySedentary,
    NonWearer,
}

impl fmt::Display for Archetype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Archetype::WeekendActive => "weekend_active",
            Archetype::WeekdayActive => "weekday_active",
            Archetype::MostlySedentary => "mostly_sedentary",
            Archetype::NonWearer => "non_wearer",
        })
    }
}

impl Archetype {
    pub const ALL: [Archetype; 4] = [
        Archetype::WeekendActive,
        Archetype::WeekdayActive,
        Archetype::MostlySedentary,
        Archetype::NonWearer,
    ];
}

impl FromStr for Archetype {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Archetype::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| UnknownName {
                what: "archetype",
                token: s.to_string(),
            })
    }
}

/// Generation parameters of an archetype.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchetypeProfile {
    /// Mean cpm by day-part (night, morning, afternoon, evening).
    pub weekday_cpm: [f64; 4],
    pub weekend_cpm: [f64; 4],
    pub non_wear_day_prob: f64,
    pub bmi_range: (f64, f64),
    pub weight_drift_kg_per_week: f64,
    pub body_fat_drift_pct_per_week: f64,
}

impl Archetype {
    pub fn profile(self) -> ArchetypeProfile {
        match self {
            Archetype::WeekendActive => ArchetypeProfile {
                weekday_cpm: [5.0, 450.0, 500.0, 300.0],
                weekend_cpm: [5.0, 900.0, 1800.0, 800.0],
                non_wear_day_prob: 0.0,
                bmi_range: (24.0, 28.0),
                weight_drift_kg_per_week: -0.3,
                body_fat_drift_pct_per_week: 0.15,
            },
            Archetype::WeekdayActive => ArchetypeProfile {
                weekday_cpm: [5.0, 900.0, 1500.0, 700.0],
                weekend_cpm: [5.0, 400.0, 500.0, 300.0],
                non_wear_day_prob: 0.0,
                bmi_range: (24.0, 29.0),
                weight_drift_kg_per_week: -0.2,
                body_fat_drift_pct_per_week: -0.1,
            },
            Archetype::MostlySedentary => ArchetypeProfile {
                weekday_cpm: [5.0, 450.0, 500.0, 300.0],
                weekend_cpm: [5.0, 250.0, 250.0, 200.0],
                non_wear_day_prob: 0.0,
                bmi_range: (30.0, 35.0),
                weight_drift_kg_per_week: 0.1,
                body_fat_drift_pct_per_week: 0.3,
            },
            Archetype::NonWearer => ArchetypeProfile {
                weekday_cpm: [5.0, 600.0, 800.0, 500.0],
                weekend_cpm: [5.0, 600.0, 800.0, 500.0],
                non_wear_day_prob: 0.3,
                bmi_range: (26.0, 32.0),
                weight_drift_kg_per_week: 0.0,
                body_fat_drift_pct_per_week: 0.05,
            },
        }
    }
}

/// Bodies of `subjects.csv`, `actigraphy.csv` and `biometrics.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohortFiles {
    pub subjects: String,
    pub actigraphy: String,
    pub biometrics: String,
}

impl CohortFiles {
    /// Creates `dir` if needed and writes the three files into it.
    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(SUBJECTS_FILE), &self.subjects)?;
        fs::write(dir.join(ACTIGRAPHY_FILE), &self.actigraphy)?;
        fs::write(dir.join(BIOMETRICS_FILE), &self.biometrics)?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct SubjectPlan {
    id: String,
    gender: Gender,
    archetype: Archetype,
    height_m: f64,
    bmi: f64,
    body_fat_pct: f64,
}

/// Generates `n_days` days for each subject in `spec`, in order. Subject ids
/// are `1`, `2`, … in spec order.
pub fn generate_cohort(
    seed: u64,
    spec: &[(Archetype, usize)],
    start_date: NaiveDate,
    n_days: u32,
) -> Result<CohortFiles, SynthError> {
    if spec.iter().all(|(_, n)| *n == 0) {
        return Err(SynthError::EmptySpec);
    }
    if n_days == 0 {
        return Err(SynthError::NoDays);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plans = Vec::new();
    for &(archetype, count) in spec {
        for _ in 0..count {
            let (lo, hi) = archetype.profile().bmi_range;
            let gender = if rng.random_bool(0.5) {
                Gender::Male
            } else {
                Gender::Female
            };
            plans.push(SubjectPlan {
                id: (plans.len() + 1).to_string(),
                gender,
                archetype,
                height_m: round_to(rng.random_range(1.35..1.70), 2),
                bmi: rng.random_range(lo..hi),
                body_fat_pct: round_to(rng.random_range(28.0..40.0), 1),
            });
        }
    }
    Ok(render(&mut rng, &plans, start_date, n_days))
}

/// Fixed four-subject camp: `84` (weekend_active, lower BMI), `82`
/// (mostly_sedentary, higher BMI), `86` (non_wearer) and `41`
/// (weekday_active, female). Four weeks from Sunday 2015-03-01 at +03:00.
pub fn golden_scenario() -> CohortFiles {
    let plans = vec![
        SubjectPlan {
            id: "84".into(),
            gender: Gender::Male,
            archetype: Archetype::WeekendActive,
            height_m: 1.55,
            bmi: 25.8,
            body_fat_pct: 30.0,
        },
        SubjectPlan {
            id: "82".into(),
            gender: Gender::Male,
            archetype: Archetype::MostlySedentary,
            height_m: 1.50,
            bmi: 32.9,
            body_fat_pct: 38.0,
        },
        SubjectPlan {
            id: "86".into(),
            gender: Gender::Male,
            archetype: Archetype::NonWearer,
            height_m: 1.60,
            bmi: 28.5,
            body_fat_pct: 33.0,
        },
        SubjectPlan {
            id: "41".into(),
            gender: Gender::Female,
            archetype: Archetype::WeekdayActive,
            height_m: 1.48,
            bmi: 27.0,
            body_fat_pct: 34.0,
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(GOLDEN_SEED);
    let start = NaiveDate::from_ymd_opt(2015, 3, 1).expect("valid date");
    render(&mut rng, &plans, start, GOLDEN_DAYS)
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (x * f).round() / f
}

fn part_index(p: DayPart) -> usize {
    match p {
        DayPart::Night => 0,
        DayPart::Morning => 1,
        DayPart::Afternoon => 2,
        DayPart::Evening => 3,
    }
}

fn render(rng: &mut ChaCha8Rng, plans: &[SubjectPlan], start: NaiveDate, n_days: u32) -> CohortFiles {
    let cal = CalendarConfig::default();
    let parts = DayPartConfig::default();
    let tz = cal.timezone;

    let subjects: Vec<Subject> = plans
        .iter()
        .map(|p| Subject {
            id: p.id.clone(),
            gender: p.gender,
        })
        .collect();

    let mut epochs = Vec::with_capacity(plans.len() * (n_days * MINUTES_PER_DAY) as usize);
    for plan in plans {
        let profile = plan.archetype.profile();
        let dists = |means: [f64; 4]| means.map(|m| Exp::new(1.0 / m).expect("positive mean"));
        let weekday = dists(profile.weekday_cpm);
        let weekend = dists(profile.weekend_cpm);
        for day in 0..n_days {
            let date = start + Days::new(u64::from(day));
            let table = if cal.is_weekend(date) { &weekend } else { &weekday };
            let worn = !rng.random_bool(profile.non_wear_day_prob);
            let midnight = tz
                .from_local_datetime(&date.and_hms_opt(0, 0, 0).expect("midnight"))
                .single()
                .expect("fixed offset");
            for minute in 0..MINUTES_PER_DAY {
                let ts = midnight + chrono::Duration::minutes(i64::from(minute));
                let counts = if worn {
                    let dist = &table[part_index(parts.part_of_hour(ts.hour()))];
                    dist.sample(rng).round() as u64
                } else {
                    0
                };
                epochs.push(Epoch {
                    subject_id: plan.id.clone(),
                    start: ts,
                    duration_s: EPOCH_SECONDS,
                    counts,
                });
            }
        }
    }

    let mut measurements: Vec<(usize, BiometricMeasurement)> = Vec::new();
    for (order, plan) in plans.iter().enumerate() {
        let profile = plan.archetype.profile();
        let base_weight = plan.bmi * plan.height_m * plan.height_m;
        let mut push = |date: NaiveDate, kind: BiometricKind, value: f64| {
            measurements.push((
                order,
                BiometricMeasurement {
                    subject_id: plan.id.clone(),
                    date,
                    kind,
                    value,
                },
            ))
        };
        for week in 0..n_days.div_ceil(7) {
            let date = start + Days::new(u64::from(week * 7));
            let w = f64::from(week);
            if week % 4 == 0 {
                push(
                    date,
                    BiometricKind::HeightM,
                    round_to(plan.height_m + 0.002 * w / 4.0, 3),
                );
            }
            let weight = base_weight
                + profile.weight_drift_kg_per_week * w
                + rng.random_range(-0.2..0.2);
            push(date, BiometricKind::WeightKg, round_to(weight, 1));
            let fat = plan.body_fat_pct
                + profile.body_fat_drift_pct_per_week * w
                + rng.random_range(-0.04..0.04);
            push(date, BiometricKind::BodyFatPct, round_to(fat.clamp(5.0, 60.0), 1));
            push(
                date,
                BiometricKind::WaistCm,
                round_to(40.0 + 1.2 * (weight / plan.height_m), 1),
            );
            push(
                date,
                BiometricKind::SystolicMmhg,
                f64::from(rng.random_range(100u32..126)),
            );
            push(
                date,
                BiometricKind::DiastolicMmhg,
                f64::from(rng.random_range(60u32..81)),
            );
        }
    }
    measurements.sort_by_key(|(order, m)| (m.date, *order, m.kind));
    let measurements: Vec<BiometricMeasurement> =
        measurements.into_iter().map(|(_, m)| m).collect();

    CohortFiles {
        subjects: write_subjects(&subjects),
        actigraphy: write_actigraphy(&epochs),
        biometrics: write_biometrics(&measurements),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bytes() {
        let spec = [(Archetype::WeekendActive, 1), (Archetype::NonWearer, 1)];
        let start = NaiveDate::from_ymd_opt(2015, 3, 1).unwrap();
        let a = generate_cohort(7, &spec, start, 2).unwrap();
        let b = generate_cohort(7, &spec, start, 2).unwrap();
        assert_eq!(a, b);
        let c = generate_cohort(8, &spec, start, 2).unwrap();
        assert_ne!(a.actigraphy, c.actigraphy);
    }

    #[test]
    fn one_day_is_1440_rows_per_subject() {
        let start = NaiveDate::from_ymd_opt(2015, 3, 1).unwrap();
        let files = generate_cohort(1, &[(Archetype::MostlySedentary, 3)], start, 1).unwrap();
        assert_eq!(files.actigraphy.lines().count(), 1 + 3 * 1440);
        assert_eq!(files.subjects.lines().count(), 4);
    }

    #[test]
    fn archetype_names_round_trip() {
        for a in Archetype::ALL {
            assert_eq!(a.to_string().parse::<Archetype>(), Ok(a));
        }
        assert!("couch".parse::<Archetype>().is_err());
    }

    #[test]
    fn errors() {
        let start = NaiveDate::from_ymd_opt(2015, 3, 1).unwrap();
        assert_eq!(
            generate_cohort(1, &[], start, 1),
            Err(SynthError::EmptySpec)
        );
        assert_eq!(
            generate_cohort(1, &[(Archetype::NonWearer, 0)], start, 1),
            Err(SynthError::EmptySpec)
        );
        assert_eq!(
            generate_cohort(1, &[(Archetype::NonWearer, 1)], start, 0),
            Err(SynthError::NoDays)
        );
    }
}
