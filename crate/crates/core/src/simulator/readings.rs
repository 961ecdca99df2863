//! Line-oriented readings files.
//!
//! One JSON object per line, one of
//!
//! ```text
//! {"sensor": 3, "value": 21.5}
//! {"sensor": 4, "lo": 20.0, "hi": 23.0}
//! {"sensor": 5, "bit": 1}
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::fusion::{Interval, Reading, ReadingPayload};
use crate::NodeId;

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum Record {
    Crisp { sensor: NodeId, value: f64 },
    Interval { sensor: NodeId, lo: f64, hi: f64 },
    Bit { sensor: NodeId, bit: u8 },
}

pub fn parse_readings(text: &str) -> Result<Vec<Reading>, SimError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| SimError::Parse { line: idx + 1, message };
        let record: Record = serde_json::from_str(line).map_err(|_| {
            err(format!("expected a sensor with `value`, `lo`/`hi` or `bit`, got `{line}`"))
        })?;
        out.push(match record {
            Record::Crisp { sensor, value } => Reading::crisp(sensor, value),
            Record::Interval { sensor, lo, hi } => {
                Reading::interval(sensor, Interval::new(lo, hi).map_err(|e| err(e.to_string()))?)
            }
            Record::Bit { sensor, bit: b @ (0 | 1) } => Reading::bit(sensor, b == 1),
            Record::Bit { bit, .. } => return Err(err(format!("bit must be 0 or 1, got {bit}"))),
        });
    }
    Ok(out)
}

pub fn format_readings(readings: &[Reading]) -> String {
    let mut out = String::new();
    for r in readings {
        let record = match r.payload {
            ReadingPayload::Crisp(value) => Record::Crisp { sensor: r.sensor, value },
            ReadingPayload::Interval(iv) => {
                Record::Interval { sensor: r.sensor, lo: iv.lo(), hi: iv.hi() }
            }
            ReadingPayload::Bit(b) => Record::Bit { sensor: r.sensor, bit: b as u8 },
        };
        out.push_str(&serde_json::to_string(&record).expect("records serialise"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn all_record_kinds() {
        let text = "# header\n{\"sensor\": 1, \"value\": 2.5}\n\n{\"sensor\": 2, \"lo\": 1, \"hi\": 3}\n{\"sensor\": 3, \"bit\": 1}\n";
        let r = parse_readings(text).unwrap();
        assert_eq!(
            r,
            vec![
                Reading::crisp(1, 2.5),
                Reading::interval(2, Interval::new(1.0, 3.0).unwrap()),
                Reading::bit(3, true),
            ]
        );
    }

    #[test]
    fn bad_lines_report_position() {
        for (text, line) in [
            ("{\"sensor\": 1, \"value\": 2}\n{\"sensor\": 2, \"bit\": 2}", 2),
            ("{\"sensor\": 1, \"lo\": 3, \"hi\": 1}", 1),
            ("\n\n{\"sensor\": 1}", 3),
            ("{\"value\": 1}", 1),
        ] {
            match parse_readings(text) {
                Err(SimError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(
            values in prop::collection::vec((0u32..1000, -1e9f64..1e9, 0f64..1e3, any::<bool>(), 0u8..3), 0..40)
        ) {
            let readings: Vec<Reading> = values
                .into_iter()
                .map(|(id, x, w, b, kind)| match kind {
                    0 => Reading::crisp(id, x),
                    1 => Reading::interval(id, Interval::new(x, x + w).unwrap()),
                    _ => Reading::bit(id, b),
                })
                .collect();
            prop_assert_eq!(parse_readings(&format_readings(&readings)).unwrap(), readings);
        }
    }
}
