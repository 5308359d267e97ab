//! Wearable actigraphy and biometric analytics.
//!
//! The pipeline runs in this order:
//!
//! 1. [`ingest`] parses `subjects.csv`, `actigraphy.csv` and `biometrics.csv`
//!    and derives BMI from weight and height.
//! 2. [`validate`] checks every dataset invariant and reports each violation
//!    with its source row.
//! 3. [`classify`] turns epoch counts into one of four activity levels using
//!    counts-per-minute cut-points.
//! 4. [`analytics`] builds per-day summaries, applies the sedentary-hours
//!    filter, and computes weekday/weekend breakdowns, interpolated biometric
//!    series, two-subject comparisons, cohort statistics and recommendations.
//!
//! [`dataset::Dataset`] ties the steps together for a loaded data directory,
//! and [`wire`] renders the results in the JSON shapes served over HTTP.

pub mod analytics;
pub mod classify;
pub mod config;
pub mod dataset;
pub mod ingest;
pub mod model;
pub mod synth;
pub mod validate;
pub mod wire;

pub use classify::CutPointConfig;
pub use config::Settings;
pub use dataset::{Dataset, SubjectRecord};
pub use model::{
    ActivityLevel, BiometricKind, BiometricMeasurement, BreakdownAverages, ClassifiedEpoch,
    DaySummary, Epoch, Gender, LevelHours, Subject,
};
