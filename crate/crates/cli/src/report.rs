use std::fmt::Write;

use actiview_core::model::{
    BiometricKind, BreakdownAverages, ComparisonReport, Finding, LevelHours, Side,
};

fn label(kind: BiometricKind) -> &'static str {
    match kind {
        BiometricKind::HeightM => "height",
        BiometricKind::WeightKg => "weight",
        BiometricKind::Bmi => "BMI",
        BiometricKind::BodyFatPct => "body fat percentage",
        BiometricKind::WaistCm => "waist circumference",
        BiometricKind::SystolicMmhg => "systolic blood pressure",
        BiometricKind::DiastolicMmhg => "diastolic blood pressure",
    }
}

fn sentence(r: &ComparisonReport, finding: Finding) -> String {
    let (me, other) = match finding.side() {
        Side::A => (&r.subject_a, &r.subject_b),
        Side::B => (&r.subject_b, &r.subject_a),
    };
    let sign = if finding.side() == Side::A { 1.0 } else { -1.0 };
    match finding {
        Finding::MoreActiveWeekend(_) => format!(
            "Subject {me} is more active during the weekend than subject {other} \
             ({:+.2} h/day moderate-to-vigorous activity).",
            sign * r.weekend_mvpa_delta.unwrap_or(0.0)
        ),
        Finding::MoreActiveWeekday(_) => format!(
            "Subject {me} is more active during weekdays than subject {other} \
             ({:+.2} h/day moderate-to-vigorous activity).",
            sign * r.weekday_mvpa_delta.unwrap_or(0.0)
        ),
        Finding::HigherLatest(_, kind) => {
            let c = r.biometrics.iter().find(|c| c.kind == kind);
            let latest = |side: Side| {
                c.and_then(|c| match side {
                    Side::A => c.a,
                    Side::B => c.b,
                })
                .map(|t| t.latest)
                .unwrap_or(f64::NAN)
            };
            let (mine, theirs) = match finding.side() {
                Side::A => (latest(Side::A), latest(Side::B)),
                Side::B => (latest(Side::B), latest(Side::A)),
            };
            format!(
                "Subject {me} has a higher {} than subject {other} ({mine:.2} vs {theirs:.2}).",
                label(kind)
            )
        }
    }
}

fn hours_row(out: &mut String, name: &str, means: Option<&LevelHours>, days: usize) {
    match means {
        Some(h) => {
            let _ = writeln!(
                out,
                "    {name:<8} {:>9.2} {:>7.2} {:>9.2} {:>9.2}   {days} day(s)",
                h.sedentary, h.light, h.moderate, h.vigorous
            );
        }
        None => {
            let _ = writeln!(out, "    {name:<8} no data");
        }
    }
}

fn breakdown_block(out: &mut String, id: &str, b: Option<&BreakdownAverages>) {
    let _ = writeln!(out, "  subject {id}");
    match b {
        Some(b) => {
            let _ = writeln!(
                out,
                "    {:<8} {:>9} {:>7} {:>9} {:>9}",
                "", "sedentary", "light", "moderate", "vigorous"
            );
            hours_row(out, "weekday", b.weekday.as_ref(), b.weekday_days);
            hours_row(out, "weekend", b.weekend.as_ref(), b.weekend_days);
        }
        None => {
            let _ = writeln!(out, "    no activity data");
        }
    }
}

/// Plain-text rendering of a comparison.
pub fn render(r: &ComparisonReport, max_sedentary_hours: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Comparison of subject {} (a) and subject {} (b), days with at most {} sedentary hours",
        r.subject_a, r.subject_b, max_sedentary_hours
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "Findings:");
    if r.flags.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for &f in &r.flags {
        let _ = writeln!(out, "  [{}] {}", f.code(), sentence(r, f));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "Mean hours per day:");
    breakdown_block(&mut out, &r.subject_a, r.breakdown_a.as_ref());
    breakdown_block(&mut out, &r.subject_b, r.breakdown_b.as_ref());
    if !r.biometrics.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "Biometrics (first -> latest):");
        for c in &r.biometrics {
            let fmt = |t: Option<actiview_core::model::BiometricTrend>| match t {
                Some(t) => format!("{:.2} -> {:.2} ({:+.2})", t.first, t.latest, t.trend),
                None => "no data".to_string(),
            };
            let _ = writeln!(
                out,
                "  {:<15} a: {:<28} b: {}",
                c.kind.as_str(),
                fmt(c.a),
                fmt(c.b)
            );
        }
    }
    out
}
