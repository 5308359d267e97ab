//! Counts-per-minute cut-point classification.
//!
//! Bands are half-open and lower-inclusive:
//! `[0, light)` sedentary, `[light, moderate)` light, `[moderate, vigorous)`
//! moderate, `[vigorous, ∞)` vigorous. Defaults are the Evenson youth
//! thresholds (100 / 2296 / 4012 cpm).

use thiserror::Error;

use crate::model::{ActivityLevel, ClassifiedEpoch, Epoch};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("cut-points must satisfy 0 < light < moderate < vigorous (got {light}, {moderate}, {vigorous})")]
pub struct InvalidCutPoints {
    pub light: f64,
    pub moderate: f64,
    pub vigorous: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPointConfig {
    light_cpm: f64,
    moderate_cpm: f64,
    vigorous_cpm: f64,
}

impl CutPointConfig {
    pub const DEFAULT_LIGHT_CPM: f64 = 100.0;
    pub const DEFAULT_MODERATE_CPM: f64 = 2296.0;
    pub const DEFAULT_VIGOROUS_CPM: f64 = 4012.0;

    pub fn new(light: f64, moderate: f64, vigorous: f64) -> Result<Self, InvalidCutPoints> {
        let ok = light.is_finite()
            && moderate.is_finite()
            && vigorous.is_finite()
            && 0.0 < light
            && light < moderate
            && moderate < vigorous;
        if !ok {
            return Err(InvalidCutPoints {
                light,
                moderate,
                vigorous,
            });
        }
        Ok(CutPointConfig {
            light_cpm: light,
            moderate_cpm: moderate,
            vigorous_cpm: vigorous,
        })
    }

    pub fn light_cpm(&self) -> f64 {
        self.light_cpm
    }

    pub fn moderate_cpm(&self) -> f64 {
        self.moderate_cpm
    }

    pub fn vigorous_cpm(&self) -> f64 {
        self.vigorous_cpm
    }

    pub fn level_for_cpm(&self, cpm: f64) -> ActivityLevel {
        if cpm >= self.vigorous_cpm {
            ActivityLevel::Vigorous
        } else if cpm >= self.moderate_cpm {
            ActivityLevel::Moderate
        } else if cpm >= self.light_cpm {
            ActivityLevel::Light
        } else {
            ActivityLevel::Sedentary
        }
    }
}

impl Default for CutPointConfig {
    fn default() -> Self {
        CutPointConfig {
            light_cpm: Self::DEFAULT_LIGHT_CPM,
            moderate_cpm: Self::DEFAULT_MODERATE_CPM,
            vigorous_cpm: Self::DEFAULT_VIGOROUS_CPM,
        }
    }
}

pub fn counts_per_minute(epoch: &Epoch) -> f64 {
    debug_assert!(epoch.duration_s > 0);
    epoch.counts as f64 * 60.0 / f64::from(epoch.duration_s)
}

pub fn classify_epoch(epoch: &Epoch, cfg: &CutPointConfig) -> ClassifiedEpoch {
    ClassifiedEpoch {
        level: cfg.level_for_cpm(counts_per_minute(epoch)),
        epoch: epoch.clone(),
    }
}

pub fn classify_all(epochs: &[Epoch], cfg: &CutPointConfig) -> Vec<ClassifiedEpoch> {
    epochs.iter().map(|e| classify_epoch(e, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use chrono::DateTime;
    use proptest::prelude::*;

    use super::*;

    fn epoch(duration_s: u32, counts: u64) -> Epoch {
        Epoch {
            subject_id: "1".into(),
            start: DateTime::parse_from_rfc3339("2015-03-01T10:00:00+03:00").unwrap(),
            duration_s,
            counts,
        }
    }

    #[test]
    fn cpm_scaling() {
        assert_eq!(counts_per_minute(&epoch(15, 0)), 0.0);
        assert_eq!(counts_per_minute(&epoch(60, 100)), 100.0);
        assert_eq!(counts_per_minute(&epoch(30, 50)), 100.0);
    }

    #[test]
    fn default_band_edges() {
        let cfg = CutPointConfig::default();
        assert_eq!(cfg.level_for_cpm(0.0), ActivityLevel::Sedentary);
        assert_eq!(cfg.level_for_cpm(99.999), ActivityLevel::Sedentary);
        assert_eq!(cfg.level_for_cpm(100.0), ActivityLevel::Light);
        assert_eq!(cfg.level_for_cpm(4012.0), ActivityLevel::Vigorous);
    }

    #[test]
    fn rejects_non_increasing_thresholds() {
        assert!(CutPointConfig::new(0.0, 1.0, 2.0).is_err());
        assert!(CutPointConfig::new(10.0, 10.0, 20.0).is_err());
        assert!(CutPointConfig::new(10.0, 30.0, 20.0).is_err());
        assert!(CutPointConfig::new(10.0, 20.0, f64::INFINITY).is_err());
        assert!(CutPointConfig::new(10.0, 20.0, 30.0).is_ok());
    }

    #[test]
    fn classify_all_edge_cases() {
        let cfg = CutPointConfig::default();
        assert!(classify_all(&[], &cfg).is_empty());
        let out = classify_all(&[epoch(60, 0)], &cfg);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].level, ActivityLevel::Sedentary);
    }

    fn any_config() -> impl Strategy<Value = CutPointConfig> {
        (1.0f64..1000.0, 1.0f64..3000.0, 1.0f64..5000.0)
            .prop_map(|(a, b, c)| CutPointConfig::new(a, a + b, a + b + c).unwrap())
    }

    proptest! {
        #[test]
        fn monotone_in_counts(cfg in any_config(), d in 1u32..600, c1 in 0u64..20_000, c2 in 0u64..20_000) {
            let (lo, hi) = (c1.min(c2), c1.max(c2));
            let l1 = classify_epoch(&epoch(d, lo), &cfg).level;
            let l2 = classify_epoch(&epoch(d, hi), &cfg).level;
            prop_assert!(l1 <= l2);
        }

        #[test]
        fn zero_is_always_sedentary(cfg in any_config()) {
            prop_assert_eq!(cfg.level_for_cpm(0.0), ActivityLevel::Sedentary);
        }

        #[test]
        fn bands_partition_the_half_line(cfg in any_config(), cpm in 0.0f64..20_000.0) {
            let in_band = [
                cpm < cfg.light_cpm(),
                cfg.light_cpm() <= cpm && cpm < cfg.moderate_cpm(),
                cfg.moderate_cpm() <= cpm && cpm < cfg.vigorous_cpm(),
                cfg.vigorous_cpm() <= cpm,
            ];
            prop_assert_eq!(in_band.iter().filter(|b| **b).count(), 1);
            let level = cfg.level_for_cpm(cpm);
            prop_assert!(in_band[level.index()]);
        }

        #[test]
        fn classify_all_commutes_with_permutation(counts in proptest::collection::vec(0u64..6000, 0..20), rot in 0usize..20) {
            let cfg = CutPointConfig::default();
            let epochs: Vec<Epoch> = counts.iter().map(|&c| epoch(60, c)).collect();
            let mut rotated = epochs.clone();
            if !rotated.is_empty() {
                let k = rot % rotated.len();
                rotated.rotate_left(k);
            }
            let mut expected = classify_all(&epochs, &cfg);
            if !expected.is_empty() {
                let k = rot % expected.len();
                expected.rotate_left(k);
            }
            prop_assert_eq!(classify_all(&rotated, &cfg), expected);
        }
    }
}
