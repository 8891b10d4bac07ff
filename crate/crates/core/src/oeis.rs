//! Cross-checks of the ternary counts against OEIS b-file fixtures.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::counts::{minimal_count, strict_minimal_count};
use crate::error::{Error, Result};

const A024012: &str = include_str!("../data/b024012.txt");
const A008865: &str = include_str!("../data/b008865.txt");

/// Lengths compared by [`verify_all`].
pub const CHECK_RANGE: std::ops::RangeInclusive<usize> = 7..=15;

/// Terms of one sequence, keyed by OEIS index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    pub id: &'static str,
    terms: BTreeMap<i64, BigInt>,
}

impl Sequence {
    pub fn get(&self, n: i64) -> Option<&BigInt> {
        self.terms.get(&n)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Parses b-file text: `n a(n)` per line, `#` comments.
pub fn parse_bfile(id: &'static str, text: &str) -> Result<Sequence> {
    let mut terms = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("{id} line {}: {line:?}", lineno + 1));
        let mut parts = line.split_whitespace();
        let n: i64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let a: BigInt = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        terms.insert(n, a);
    }
    Ok(Sequence { id, terms })
}

/// 2^n - n^2. Minimal ternary superpatterns at length `n` is term `n - 2`.
pub fn a024012() -> Sequence {
    parse_bfile("A024012", A024012).expect("bundled fixture parses")
}

/// n^2 - 2. Strict minimal ternary superpatterns at length `n` is term `n - 4`.
pub fn a008865() -> Sequence {
    parse_bfile("A008865", A008865).expect("bundled fixture parses")
}

/// One compared term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub sequence: &'static str,
    pub n: usize,
    pub offset_index: i64,
    pub computed: String,
    pub fixture: Option<String>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.fixture.as_deref() == Some(self.computed.as_str())
    }
}

fn compare(
    seq: &Sequence,
    shift: i64,
    lengths: impl IntoIterator<Item = usize>,
    computed: impl Fn(usize) -> BigInt,
) -> Vec<Comparison> {
    lengths
        .into_iter()
        .map(|n| {
            let idx = n as i64 - shift;
            Comparison {
                sequence: seq.id,
                n,
                offset_index: idx,
                computed: computed(n).to_string(),
                fixture: seq.get(idx).map(ToString::to_string),
            }
        })
        .collect()
}

/// Compares `counts[i]` (at length `first + i`) with A024012.
pub fn compare_minimal_counts(first: usize, counts: &[BigInt]) -> Vec<Comparison> {
    compare(&a024012(), 2, first..first + counts.len(), |n| {
        counts[n - first].clone()
    })
}

/// Compares `counts[i]` (at length `first + i`) with A008865.
pub fn compare_strict_minimal_counts(first: usize, counts: &[BigInt]) -> Vec<Comparison> {
    compare(&a008865(), 4, first..first + counts.len(), |n| {
        counts[n - first].clone()
    })
}

/// Closed forms over [`CHECK_RANGE`] against both fixtures.
pub fn verify_all() -> Vec<Comparison> {
    let mut out = compare(&a024012(), 2, CHECK_RANGE, minimal_count);
    out.extend(compare(&a008865(), 4, CHECK_RANGE, strict_minimal_count));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let a = a024012();
        assert_eq!(a.get(0), Some(&BigInt::from(1)));
        assert_eq!(a.get(3), Some(&BigInt::from(-1)));
        assert_eq!(a.get(5), Some(&BigInt::from(7)));
        let b = a008865();
        assert_eq!(b.get(2), Some(&BigInt::from(2)));
        assert!(b.get(1).is_none());
    }

    #[test]
    fn closed_forms_match() {
        let rows = verify_all();
        assert_eq!(rows.len(), 18);
        assert!(rows.iter().all(Comparison::matches), "{rows:?}");
    }

    #[test]
    fn mismatch_detected() {
        let rows = compare_minimal_counts(7, &[BigInt::from(7), BigInt::from(15)]);
        assert!(rows[0].matches());
        assert!(!rows[1].matches());
    }

    #[test]
    fn malformed_bfile() {
        assert!(parse_bfile("X", "1 2 3").is_err());
        assert!(parse_bfile("X", "a 2").is_err());
        assert_eq!(parse_bfile("X", "# c\n\n4 -5\n").unwrap().len(), 1);
    }
}
