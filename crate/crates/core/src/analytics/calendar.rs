//! Local calendar rules: time zone, weekend days and day-part buckets.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Datelike, FixedOffset, NaiveDate, Timelike, Weekday};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalendarError {
    #[error("bad time zone `{0}` (want a fixed offset such as +03:00, or UTC)")]
    Timezone(String),
    #[error("unknown weekday `{0}`")]
    Weekday(String),
    #[error("weekend must contain at least one and at most six weekdays")]
    WeekendSize,
    #[error("day-part boundaries must be 0 < morning < afternoon < evening < 24")]
    DayParts,
}

const DAY_NAMES: [&str; 7] = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"];

/// Proper, non-empty subset of the week.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeekendDays(u8);

impl WeekendDays {
    pub fn new(days: impl IntoIterator<Item = Weekday>) -> Result<Self, CalendarError> {
        let mask = days
            .into_iter()
            .fold(0u8, |m, d| m | (1 << d.num_days_from_monday()));
        if mask == 0 || mask == 0x7f {
            return Err(CalendarError::WeekendSize);
        }
        Ok(WeekendDays(mask))
    }

    pub fn contains(&self, day: Weekday) -> bool {
        self.0 & (1 << day.num_days_from_monday()) != 0
    }

    pub fn names(&self) -> Vec<&'static str> {
        (0..7)
            .filter(|i| self.0 & (1 << i) != 0)
            .map(|i| DAY_NAMES[i])
            .collect()
    }
}

impl Default for WeekendDays {
    /// Friday and Saturday.
    fn default() -> Self {
        WeekendDays::new([Weekday::Fri, Weekday::Sat]).expect("two days")
    }
}

impl FromStr for WeekendDays {
    type Err = CalendarError;

    /// Comma list of three-letter day names, e.g. `fri,sat`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let days = s
            .split(',')
            .map(|t| {
                let t = t.trim().to_ascii_lowercase();
                DAY_NAMES
                    .iter()
                    .position(|n| *n == t)
                    .map(|i| Weekday::try_from(i as u8).expect("0..7"))
                    .ok_or(CalendarError::Weekday(t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        WeekendDays::new(days)
    }
}

impl fmt::Display for WeekendDays {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

pub fn parse_offset(s: &str) -> Result<FixedOffset, CalendarError> {
    let bad = || CalendarError::Timezone(s.to_string());
    if s.eq_ignore_ascii_case("utc") || s == "Z" {
        return FixedOffset::east_opt(0).ok_or_else(bad);
    }
    let b = s.as_bytes();
    if b.len() != 6 || b[3] != b':' || !(b[0] == b'+' || b[0] == b'-') {
        return Err(bad());
    }
    let hh: i32 = s[1..3].parse().map_err(|_| bad())?;
    let mm: i32 = s[4..6].parse().map_err(|_| bad())?;
    if hh > 23 || mm > 59 {
        return Err(bad());
    }
    let secs = (hh * 3600 + mm * 60) * if b[0] == b'-' { -1 } else { 1 };
    FixedOffset::east_opt(secs).ok_or_else(bad)
}

pub fn format_offset(offset: &FixedOffset) -> String {
    let secs = offset.local_minus_utc();
    let sign = if secs < 0 { '-' } else { '+' };
    let secs = secs.abs();
    format!("{sign}{:02}:{:02}", secs / 3600, (secs % 3600) / 60)
}

/// How instants map to local dates and which dates are weekend days.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CalendarConfig {
    pub timezone: FixedOffset,
    pub weekend_days: WeekendDays,
}

impl Default for CalendarConfig {
    /// UTC+03:00 with a Friday–Saturday weekend.
    fn default() -> Self {
        CalendarConfig {
            timezone: FixedOffset::east_opt(3 * 3600).expect("valid offset"),
            weekend_days: WeekendDays::default(),
        }
    }
}

impl CalendarConfig {
    pub fn local(&self, ts: &DateTime<FixedOffset>) -> DateTime<FixedOffset> {
        ts.with_timezone(&self.timezone)
    }

    pub fn local_date(&self, ts: &DateTime<FixedOffset>) -> NaiveDate {
        self.local(ts).date_naive()
    }

    pub fn is_weekend(&self, date: NaiveDate) -> bool {
        self.weekend_days.contains(date.weekday())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DayPart {
    Night,
    Morning,
    Afternoon,
    Evening,
}

/// Four half-open local-time buckets covering the day. Defaults:
/// night [00,06), morning [06,12), afternoon [12,18), evening [18,24).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DayPartConfig {
    morning_start_h: u32,
    afternoon_start_h: u32,
    evening_start_h: u32,
}

impl DayPartConfig {
    pub fn new(morning: u32, afternoon: u32, evening: u32) -> Result<Self, CalendarError> {
        if !(0 < morning && morning < afternoon && afternoon < evening && evening < 24) {
            return Err(CalendarError::DayParts);
        }
        Ok(DayPartConfig {
            morning_start_h: morning,
            afternoon_start_h: afternoon,
            evening_start_h: evening,
        })
    }

    pub fn part_of_hour(&self, hour: u32) -> DayPart {
        if hour >= self.evening_start_h {
            DayPart::Evening
        } else if hour >= self.afternoon_start_h {
            DayPart::Afternoon
        } else if hour >= self.morning_start_h {
            DayPart::Morning
        } else {
            DayPart::Night
        }
    }

    /// Bucket of a local timestamp; only the hour matters.
    pub fn part_of(&self, local: &DateTime<FixedOffset>) -> DayPart {
        self.part_of_hour(local.hour())
    }
}

impl Default for DayPartConfig {
    fn default() -> Self {
        DayPartConfig::new(6, 12, 18).expect("valid defaults")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weekend_parse_and_display() {
        let w: WeekendDays = "fri,sat".parse().unwrap();
        assert_eq!(w, WeekendDays::default());
        assert_eq!(w.to_string(), "fri,sat");
        let w: WeekendDays = "Sat, SUN".parse().unwrap();
        assert!(w.contains(Weekday::Sun));
        assert!(!w.contains(Weekday::Fri));
        assert!("".parse::<WeekendDays>().is_err());
        assert!("funday".parse::<WeekendDays>().is_err());
        assert_eq!(
            "mon,tue,wed,thu,fri,sat,sun".parse::<WeekendDays>(),
            Err(CalendarError::WeekendSize)
        );
    }

    #[test]
    fn offsets() {
        assert_eq!(parse_offset("+03:00").unwrap().local_minus_utc(), 10800);
        assert_eq!(parse_offset("-05:30").unwrap().local_minus_utc(), -19800);
        assert_eq!(parse_offset("UTC").unwrap().local_minus_utc(), 0);
        assert!(parse_offset("+3").is_err());
        assert!(parse_offset("Asia/Qatar").is_err());
        assert_eq!(format_offset(&parse_offset("-05:30").unwrap()), "-05:30");
        assert_eq!(format_offset(&parse_offset("Z").unwrap()), "+00:00");
    }

    #[test]
    fn local_date_follows_configured_offset() {
        let cal = CalendarConfig::default();
        // 22:30 UTC on a Thursday is 01:30 Friday in +03:00.
        let ts = DateTime::parse_from_rfc3339("2015-03-05T22:30:00Z").unwrap();
        let date = cal.local_date(&ts);
        assert_eq!(date, NaiveDate::from_ymd_opt(2015, 3, 6).unwrap());
        assert!(cal.is_weekend(date));
    }

    #[test]
    fn day_parts_partition_the_day() {
        let parts = DayPartConfig::default();
        let got: Vec<DayPart> = (0..24).map(|h| parts.part_of_hour(h)).collect();
        assert_eq!(got[0], DayPart::Night);
        assert_eq!(got[5], DayPart::Night);
        assert_eq!(got[6], DayPart::Morning);
        assert_eq!(got[11], DayPart::Morning);
        assert_eq!(got[12], DayPart::Afternoon);
        assert_eq!(got[17], DayPart::Afternoon);
        assert_eq!(got[18], DayPart::Evening);
        assert_eq!(got[23], DayPart::Evening);
        assert!(DayPartConfig::new(0, 12, 18).is_err());
        assert!(DayPartConfig::new(6, 6, 18).is_err());
    }
}
