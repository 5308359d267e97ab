use chrono::NaiveDate;

use super::AnalyticsError;

/// Daily linear interpolation of a sparse measurement series.
///
/// Emits one value per calendar day from the first to the last knot,
/// inclusive. Knot dates return the knot value unchanged; days in between
/// are linear in day count. Nothing is extrapolated past either end.
pub fn sample_biometric_daily(
    series: &[(NaiveDate, f64)],
) -> Result<Vec<(NaiveDate, f64)>, AnalyticsError> {
    let Some(&(first, first_value)) = series.first() else {
        return Err(AnalyticsError::EmptySeries);
    };
    if let Some(w) = series.windows(2).find(|w| w[0].0 >= w[1].0) {
        return Err(AnalyticsError::UnsortedSeries(w[1].0));
    }

    let mut out = vec![(first, first_value)];
    for w in series.windows(2) {
        let ((d0, v0), (d1, v1)) = (w[0], w[1]);
        let span = (d1 - d0).num_days();
        let (lo, hi) = if v0 <= v1 { (v0, v1) } else { (v1, v0) };
        for k in 1..span {
            let t = k as f64 / span as f64;
            let v = (v0 + t * (v1 - v0)).clamp(lo, hi);
            out.push((d0 + chrono::Days::new(k as u64), v));
        }
        out.push((d1, v1));
    }
    Ok(out)
}
