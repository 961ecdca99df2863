use serde::{Deserialize, Serialize};

use super::{FusionError, OpCounters};

/// Outcome of a majority vote when exactly half the bits are set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    /// Alarm on a tie: a missed detection costs more than a false alarm.
    #[default]
    One,
    Zero,
}

/// Exhaustive truth table over a fixed number of input bits.
///
/// `outputs[i]` is the result for the bit vector whose big-endian binary
/// value is `i` (the first bit is the most significant).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    arity: usize,
    outputs: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, outputs: Vec<bool>) -> Result<Self, FusionError> {
        if arity >= usize::BITS as usize || outputs.len() != 1usize << arity {
            return Err(FusionError::IncompleteRule { arity });
        }
        Ok(Self { arity, outputs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BooleanRule {
    Majority(TieRule),
    And,
    Or,
    /// `table[k]` is the output when exactly `k` bits are set. Must cover
    /// `0..=n` for `n` input bits.
    ByCount(Vec<bool>),
    /// Arbitrary function of the exact bit vector. Not order invariant.
    Exact(TruthTable),
}

impl Default for BooleanRule {
    fn default() -> Self {
        BooleanRule::Majority(TieRule::default())
    }
}

impl BooleanRule {
    /// True when the rule only depends on how many bits are set, which makes
    /// it computable from `(ones, total)` partial tallies.
    pub fn is_count_based(&self) -> bool {
        !matches!(self, BooleanRule::Exact(_))
    }

    /// Decides from tallies. `None` for [`BooleanRule::Exact`].
    pub fn decide_counts(
        &self,
        ones: usize,
        total: usize,
        counters: &mut OpCounters,
    ) -> Option<Result<bool, FusionError>> {
        let out = match self {
            BooleanRule::Majority(tie) => {
                counters.comparisons += 1;
                match (2 * ones).cmp(&total) {
                    std::cmp::Ordering::Greater => Ok(true),
                    std::cmp::Ordering::Less => Ok(false),
                    std::cmp::Ordering::Equal => Ok(*tie == TieRule::One),
                }
            }
            BooleanRule::And => {
                counters.comparisons += 1;
                Ok(ones == total)
            }
            BooleanRule::Or => {
                counters.comparisons += 1;
                Ok(ones > 0)
            }
            BooleanRule::ByCount(table) => {
                if table.len() <= total {
                    Err(FusionError::IncompleteRule { arity: total })
                } else {
                    Ok(table[ones])
                }
            }
            BooleanRule::Exact(_) => return None,
        };
        Some(out)
    }
}

/// Fuses binary readings with a majority, AND, OR or table-driven rule.
pub fn boolean_fuse(
    bits: &[bool],
    rule: &BooleanRule,
    counters: &mut OpCounters,
) -> Result<bool, FusionError> {
    if bits.is_empty() {
        return Err(FusionError::EmptyInput);
    }
    if let BooleanRule::Exact(table) = rule {
        if table.arity != bits.len() {
            return Err(FusionError::IncompleteRule { arity: bits.len() });
        }
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        return Ok(table.outputs[index]);
    }
    let ones = bits.iter().filter(|&&b| b).count();
    counters.additions += bits.len() as u64 - 1;
    rule.decide_counts(ones, bits.len(), counters)
        .expect("count-based rule")
}

/// Parses a string of `0`/`1` characters, ignoring whitespace.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}
