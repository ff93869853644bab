//! Indices: finite sequences of integers, possibly with non-positive entries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An index `(k_1, …, k_r)` of arbitrary integers. The empty index has depth 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(Vec<i64>);

/// Summary of an index as returned by [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexClass {
    pub depth: usize,
    /// Sum of the entries; only defined for positive indices.
    pub weight: Option<u64>,
    pub is_positive: bool,
    /// Positive and either empty or ending in an entry `>= 2`.
    pub is_admissible: bool,
    pub positive_count: usize,
    pub positive_sum: u64,
}

impl Index {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&k| k > 0)
    }

    /// Positions (0-based) of the non-positive entries.
    pub fn non_positive_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &k)| k <= 0).map(|(i, _)| i)
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut entries = Vec::new();
        let mut offset = 0;
        for field in text.split(',') {
            let lead = field.len() - field.trim_start().len();
            let trimmed = field.trim();
            if trimmed.is_empty() {
                return Err(Error::Parse { position: offset, message: "empty entry".into() });
            }
            let value = trimmed.parse::<i64>().map_err(|e| Error::Parse {
                position: offset + lead,
                message: format!("invalid integer {trimmed:?}: {e}"),
            })?;
            entries.push(value);
            offset += field.len() + 1;
        }
        Ok(Self(entries))
    }
}

impl From<Vec<i64>> for Index {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for Index {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Formats as `k1,k2,...,kr`; the empty index formats as the empty string.
impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Index::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn classify(k: &Index) -> IndexClass {
    let is_positive = k.is_positive();
    let positives = k.entries().iter().filter(|&&e| e > 0);
    let positive_count = positives.clone().count();
    let positive_sum = positives.map(|&e| e as u64).sum();
    IndexClass {
        depth: k.depth(),
        weight: is_positive.then_some(positive_sum),
        is_positive,
        is_admissible: is_positive && k.entries().last().is_none_or(|&e| e >= 2),
        positive_count,
        positive_sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classify_examples() {
        let c = classify(&Index::from([1, 2]));
        assert_eq!(
            c,
            IndexClass {
                depth: 2,
                weight: Some(3),
                is_positive: true,
                is_admissible: true,
                positive_count: 2,
                positive_sum: 3
            }
        );
        let e = classify(&Index::empty());
        assert_eq!((e.depth, e.weight, e.is_positive, e.is_admissible), (0, Some(0), true, true));
        let g = classify(&Index::from([3, -1]));
        assert_eq!(g.weight, None);
        assert!(!g.is_positive && !g.is_admissible);
        assert_eq!((g.positive_count, g.positive_sum), (1, 3));
        assert!(!classify(&Index::from([2, 1])).is_admissible);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Index::parse("3,-1").unwrap(), Index::from([3, -1]));
        assert_eq!(Index::parse("").unwrap(), Index::empty());
        assert_eq!(Index::parse(" 2 , 0 ").unwrap(), Index::from([2, 0]));
        assert!(matches!(Index::parse("3,,1"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(Index::parse("3,x"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(Index::parse("1,"), Err(Error::Parse { position: 2, .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn parse_format_round_trip(v in prop::collection::vec(-9i64..=9, 0..=6)) {
            let k = Index::new(v);
            prop_assert_eq!(Index::parse(&k.to_string()).unwrap(), k);
        }

        #[test]
        fn positive_sum_dominates_dominated_positive_indices(
            v in prop::collection::vec(-9i64..=9, 0..=6),
            seed in any::<u64>(),
        ) {
            let k = Index::new(v);
            // keep a subsequence of the positive entries, each lowered but kept positive
            let mut s = seed;
            let dominated: Vec<i64> = k.entries().iter().filter(|&&e| e > 0).filter_map(|&e| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % 3 != 0).then(|| 1 + ((s >> 40) as i64).rem_euclid(e))
            }).collect();
            let d = classify(&Index::new(dominated));
            prop_assert!(d.is_positive);
            prop_assert!(classify(&k).positive_sum >= d.weight.unwrap());
            prop_assert!(classify(&k).positive_count >= d.depth);
        }
    }
}
