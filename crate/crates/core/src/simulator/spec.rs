use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::fusion::{
    boolean_fuse, fuse_crisp, marzullo, n_function, omega_fuse, schmid_schossmaier, to_interval,
    trimmed_midpoint_fuse, BooleanRule, CrispKind, Interval, MedianRule, OpCounters, Reading,
    ReadingPayload, TieRule, Tolerance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionFunction {
    Mean,
    Median,
    Min,
    Max,
    Mode,
    Marzullo,
    SchmidSchossmaier,
    Omega,
    NFunction,
    /// Binary readings combined by a [`BooleanRule`] (majority by default).
    Boolean,
    TrimmedMidpoint,
}

/// Which payload kind a fusion function consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayloadFamily {
    Crisp,
    Interval,
    Bit,
}

impl fmt::Display for PayloadFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PayloadFamily::Crisp => "crisp",
            PayloadFamily::Interval => "interval",
            PayloadFamily::Bit => "bit",
        })
    }
}

impl FusionFunction {
    pub fn family(self) -> PayloadFamily {
        use FusionFunction::*;
        match self {
            Mean | Median | Min | Max | Mode | TrimmedMidpoint => PayloadFamily::Crisp,
            Marzullo | SchmidSchossmaier | Omega | NFunction => PayloadFamily::Interval,
            Boolean => PayloadFamily::Bit,
        }
    }

    pub fn needs_fault_bound(self) -> bool {
        use FusionFunction::*;
        matches!(self, Marzullo | SchmidSchossmaier | NFunction | TrimmedMidpoint)
    }

    pub fn as_str(self) -> &'static str {
        use FusionFunction::*;
        match self {
            Mean => "mean",
            Median => "median",
            Min => "min",
            Max => "max",
            Mode => "mode",
            Marzullo => "marzullo",
            SchmidSchossmaier => "schmid_schossmaier",
            Omega => "omega",
            NFunction => "n_function",
            Boolean => "boolean",
            TrimmedMidpoint => "trimmed_midpoint",
        }
    }
}

impl fmt::Display for FusionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fusion function together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionSpec {
    pub function: FusionFunction,
    pub f: Option<usize>,
    /// Widens crisp readings into intervals for the interval functions.
    pub tolerance: Option<Tolerance>,
    pub boolean_rule: Option<BooleanRule>,
    pub median_rule: MedianRule,
}

impl FusionSpec {
    pub fn new(function: FusionFunction) -> Self {
        Self { function, f: None, tolerance: None, boolean_rule: None, median_rule: MedianRule::default() }
    }

    pub fn with_fault_bound(mut self, f: usize) -> Self {
        self.f = Some(f);
        self
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tolerance = Some(tol);
        self
    }

    pub fn with_rule(mut self, rule: BooleanRule) -> Self {
        self.boolean_rule = Some(rule);
        self
    }

    pub fn with_median_rule(mut self, rule: MedianRule) -> Self {
        self.median_rule = rule;
        self
    }

    pub fn rule(&self) -> BooleanRule {
        self.boolean_rule.clone().unwrap_or_default()
    }

    /// Checks that parameters are present exactly when the function uses them.
    pub fn validate(&self) -> Result<(), SimError> {
        let func = self.function;
        if func.needs_fault_bound() != self.f.is_some() {
            return Err(SimError::InvalidSpec(if self.f.is_some() {
                format!("{func} does not take a fault bound")
            } else {
                format!("{func} requires a fault bound f")
            }));
        }
        if self.tolerance.is_some() && func.family() != PayloadFamily::Interval {
            return Err(SimError::InvalidSpec(format!("{func} does not take a tolerance")));
        }
        if self.boolean_rule.is_some() && func != FusionFunction::Boolean {
            return Err(SimError::InvalidSpec(format!("{func} does not take a Boolean rule")));
        }
        Ok(())
    }

    /// True when partial results can be merged at cluster heads.
    pub fn is_decomposable(&self) -> bool {
        match self.function {
            FusionFunction::Min | FusionFunction::Max | FusionFunction::Mean => true,
            FusionFunction::Boolean => self.rule().is_count_based(),
            _ => false,
        }
    }

    /// Converts one reading into the payload family this spec consumes.
    pub(crate) fn coerce(&self, reading: &Reading) -> Result<ReadingPayload, SimError> {
        let family = self.function.family();
        let mismatch = || SimError::TypeMismatch {
            sensor: reading.sensor,
            expected: family,
            found: reading.payload.kind_name(),
        };
        match (family, reading.payload) {
            (PayloadFamily::Crisp, p @ ReadingPayload::Crisp(_))
            | (PayloadFamily::Interval, p @ ReadingPayload::Interval(_))
            | (PayloadFamily::Bit, p @ ReadingPayload::Bit(_)) => Ok(p),
            (PayloadFamily::Interval, ReadingPayload::Crisp(v)) => match self.tolerance {
                Some(tol) => Ok(ReadingPayload::Interval(to_interval(v, tol))),
                None => Err(mismatch()),
            },
            _ => Err(mismatch()),
        }
    }
}

impl FromStr for FusionSpec {
    type Err = SimError;

    /// Accepts the function names plus `majority`, `and` and `or` as
    /// shorthands for Boolean fusion with that rule.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use FusionFunction::*;
        let boolean = |rule| Ok(FusionSpec::new(Boolean).with_rule(rule));
        let func = match s {
            "majority" => return boolean(BooleanRule::Majority(TieRule::One)),
            "and" => return boolean(BooleanRule::And),
            "or" => return boolean(BooleanRule::Or),
            "mean" => Mean,
            "median" => Median,
            "min" => Min,
            "max" => Max,
            "mode" => Mode,
            "marzullo" => Marzullo,
            "schmid_schossmaier" => SchmidSchossmaier,
            "omega" => Omega,
            "n_function" => NFunction,
            "boolean" => Boolean,
            "trimmed_midpoint" => TrimmedMidpoint,
            other => return Err(SimError::InvalidSpec(format!("unknown fusion function `{other}`"))),
        };
        Ok(FusionSpec::new(func))
    }
}

/// Applies `spec` to the whole multiset of readings at once.
///
/// Readings are fused in ascending sensor-id order, so the result does not
/// depend on the order of `readings`.
pub fn fuse_readings(
    readings: &[Reading],
    spec: &FusionSpec,
    counters: &mut OpCounters,
) -> Result<ReadingPayload, SimError> {
    spec.validate()?;
    let mut sorted = readings.to_vec();
    sorted.sort_by_key(|r| r.sensor);
    let payloads = sorted.iter().map(|r| spec.coerce(r)).collect::<Result<Vec<_>, _>>()?;
    fuse_payloads(&payloads, spec, counters)
}

pub(crate) fn fuse_payloads(
    payloads: &[ReadingPayload],
    spec: &FusionSpec,
    counters: &mut OpCounters,
) -> Result<ReadingPayload, SimError> {
    let crisp = || payloads.iter().filter_map(|p| match p {
        ReadingPayload::Crisp(v) => Some(*v),
        _ => None,
    });
    let intervals = || -> Vec<Interval> {
        payloads
            .iter()
            .filter_map(|p| match p {
                ReadingPayload::Interval(iv) => Some(*iv),
                _ => None,
            })
            .collect()
    };
    let f = spec.f.unwrap_or(0);
    use FusionFunction::*;
    let out = match spec.function {
        Mean | Median | Min | Max | Mode => {
            let kind = match spec.function {
                Mean => CrispKind::Mean,
                Median => CrispKind::Median(spec.median_rule),
                Min => CrispKind::Min,
                Max => CrispKind::Max,
                _ => CrispKind::Mode,
            };
            ReadingPayload::Crisp(fuse_crisp(&crisp().collect::<Vec<_>>(), kind, counters)?)
        }
        TrimmedMidpoint => {
            ReadingPayload::Crisp(trimmed_midpoint_fuse(&crisp().collect::<Vec<_>>(), f, counters)?)
        }
        Marzullo => ReadingPayload::Interval(marzullo(&intervals(), f, counters)?),
        SchmidSchossmaier => ReadingPayload::Interval(schmid_schossmaier(&intervals(), f, counters)?),
        Omega => ReadingPayload::Interval(omega_fuse(&intervals(), counters)?),
        NFunction => ReadingPayload::Interval(n_function(&intervals(), f, counters)?),
        Boolean => {
            let bits: Vec<bool> = payloads
                .iter()
                .filter_map(|p| match p {
                    ReadingPayload::Bit(b) => Some(*b),
                    _ => None,
                })
                .collect();
            ReadingPayload::Bit(boolean_fuse(&bits, &spec.rule(), counters)?)
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(FusionSpec::new(FusionFunction::Min).validate().is_ok());
        assert!(FusionSpec::new(FusionFunction::Marzullo).validate().is_err());
        assert!(FusionSpec::new(FusionFunction::Marzullo).with_fault_bound(1).validate().is_ok());
        assert!(FusionSpec::new(FusionFunction::Min).with_fault_bound(1).validate().is_err());
        let tol = Tolerance::new(1.0, 1.0).unwrap();
        assert!(FusionSpec::new(FusionFunction::Omega).with_tolerance(tol).validate().is_ok());
        assert!(FusionSpec::new(FusionFunction::Mean).with_tolerance(tol).validate().is_err());
        assert!(FusionSpec::new(FusionFunction::Mean).with_rule(BooleanRule::And).validate().is_err());
    }

    #[test]
    fn names() {
        let s: FusionSpec = "majority".parse().unwrap();
        assert_eq!(s.function, FusionFunction::Boolean);
        assert_eq!(s.rule(), BooleanRule::Majority(TieRule::One));
        assert_eq!("n_function".parse::<FusionSpec>().unwrap().function, FusionFunction::NFunction);
        assert!("average".parse::<FusionSpec>().is_err());
    }

    #[test]
    fn crisp_readings_widen_for_interval_functions() {
        let readings = [Reading::crisp(1, 10.0), Reading::crisp(2, 11.0), Reading::crisp(3, 30.0)];
        let spec = FusionSpec::new(FusionFunction::Marzullo)
            .with_fault_bound(1)
            .with_tolerance(Tolerance::new(1.0, 1.0).unwrap());
        let out = fuse_readings(&readings, &spec, &mut OpCounters::new()).unwrap();
        assert_eq!(out, ReadingPayload::Interval(Interval::new(10.0, 11.0).unwrap()));

        let no_tol = FusionSpec::new(FusionFunction::Marzullo).with_fault_bound(1);
        assert!(matches!(
            fuse_readings(&readings, &no_tol, &mut OpCounters::new()),
            Err(SimError::TypeMismatch { .. })
        ));
    }

    #[test]
    fn bits_do_not_feed_crisp_functions() {
        let readings = [Reading::bit(1, true)];
        let err = fuse_readings(&readings, &FusionSpec::new(FusionFunction::Mean), &mut OpCounters::new());
        assert_eq!(
            err,
            Err(SimError::TypeMismatch { sensor: 1.into(), expected: PayloadFamily::Crisp, found: "bit" })
        );
    }
}
