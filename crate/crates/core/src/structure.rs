//! Structural checks on ternary superpatterns, and the quaternary
//! two-block example.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exhaustive::{enumerate_minimal_upto_iso, Budget};
use crate::patterns::relabel_canonical;
use crate::superpatterns::{is_strict, is_superpattern, minimum_length};
use crate::word::{Letter, Word};

fn require_ternary(word: &Word) -> Result<()> {
    match word.letters().iter().position(|&l| !(1..=3).contains(&l)) {
        Some(position) => Err(Error::LetterOutOfRange {
            letter: word.letters()[position].into(),
            position,
            alphabet: 3,
        }),
        None => Ok(()),
    }
}

/// Index at which the subsequence `a b` is first completed.
fn first_pair_end(w: &[Letter], a: Letter, b: Letter) -> Option<usize> {
    let start = w.iter().position(|&l| l == a)?;
    (start + 1..w.len()).find(|&i| w[i] == b)
}

/// Index of the latest `a` that still has a `b` after it.
fn last_pair_start(w: &[Letter], a: Letter, b: Letter) -> Option<usize> {
    let end = w.iter().rposition(|&l| l == b)?;
    (0..end).rev().find(|&i| w[i] == a)
}

/// For every assignment of distinct `i, j, k` in `{1, 2, 3}`: some `i` has a
/// `jk` subsequence before it, some `i` has one after it, and likewise for
/// `kj`. The four conditions may be met by different occurrences of `i`.
pub fn flanking_pairs_hold(word: &Word) -> Result<bool> {
    require_ternary(word)?;
    Ok(flanking_violation(word.letters()).is_none())
}

/// First `(i, j, k)` and failing pair, if any: `before` tells which side.
pub fn flanking_violation(w: &[Letter]) -> Option<FlankingViolation> {
    for (i, j, k) in [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)] {
        let first_i = w.iter().position(|&l| l == i);
        let last_i = w.iter().rposition(|&l| l == i);
        for (a, b) in [(j, k), (k, j)] {
            let before = match (first_pair_end(w, a, b), last_i) {
                (Some(end), Some(li)) => li > end,
                _ => false,
            };
            if !before {
                return Some(FlankingViolation {
                    i,
                    pair: [a, b],
                    before: true,
                });
            }
            let after = match (last_pair_start(w, a, b), first_i) {
                (Some(start), Some(fi)) => fi < start,
                _ => false,
            };
            if !after {
                return Some(FlankingViolation {
                    i,
                    pair: [a, b],
                    before: false,
                });
            }
        }
    }
    None
}

/// A failed flanking condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlankingViolation {
    pub i: Letter,
    pub pair: [Letter; 2],
    /// True when no `i` has the pair before it; false when none has it after.
    pub before: bool,
}

/// The minimum ternary superpatterns in first-occurrence form.
pub fn minimum_ternary_superpatterns() -> Result<&'static [Word]> {
    static CACHE: OnceLock<Vec<Word>> = OnceLock::new();
    if let Some(words) = CACHE.get() {
        return Ok(words);
    }
    let least = minimum_length(3, 3, 12)?;
    let words = enumerate_minimal_upto_iso(least, Budget::default_for(2))?;
    Ok(CACHE.get_or_init(|| words))
}

/// Positions of a length-7 subsequence ending at the last letter whose
/// relabeling is a minimum superpattern, if one exists.
///
/// Requires a strict minimal ternary superpattern.
pub fn minimum_embedded_at_end(word: &Word) -> Result<Option<Vec<usize>>> {
    require_ternary(word)?;
    let w = word.letters();
    let minimal = w.windows(2).all(|p| p[0] != p[1]);
    if !minimal || !is_strict(w, 3)? {
        return Err(Error::Precondition(format!(
            "{word} is not a strict minimal superpattern"
        )));
    }
    let targets = minimum_ternary_superpatterns()?;
    let m = targets.first().map_or(0, Word::len);
    let last = w.len() - 1;

    fn choose(word: &Word, from: usize, last: usize, need: usize, picked: &mut Vec<usize>, targets: &[Word]) -> bool {
        if picked.len() == need {
            picked.push(last);
            let hit = targets.contains(&relabel_canonical(&word.subsequence(picked)));
            if !hit {
                picked.pop();
            }
            return hit;
        }
        let remaining = need - picked.len();
        for i in from..=last.saturating_sub(remaining) {
            picked.push(i);
            if choose(word, i + 1, last, need, picked, targets) {
                return true;
            }
            picked.pop();
        }
        false
    }

    let mut picked = Vec::with_capacity(m);
    Ok(choose(word, 0, last, m - 1, &mut picked, targets).then_some(picked))
}

/// True when [`minimum_embedded_at_end`] finds a witness.
pub fn embeds_minimum_at_end(word: &Word) -> Result<bool> {
    Ok(minimum_embedded_at_end(word)?.is_some())
}

/// Two type-A ternary blocks joined by a 4.
pub const QUATERNARY_EXAMPLE: &str = "121312141213121";

/// Outcome of checking [`QUATERNARY_EXAMPLE`] against the length-4 arrangements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternaryReport {
    pub word: String,
    pub is_superpattern: bool,
    pub is_strict: bool,
    pub subsequence_length: usize,
    pub subsequences_checked: usize,
    /// Subsequences of that length that are superpatterns.
    pub superpattern_subsequences: usize,
    /// Those among them in which every letter is necessary.
    pub irreducible_subsequences: usize,
}

impl QuaternaryReport {
    /// Strict superpattern, and no length-12 subsequence is a minimum one.
    pub fn holds(&self) -> bool {
        self.is_superpattern && self.is_strict && self.irreducible_subsequences == 0
    }
}

/// Checks the quaternary example: it is a strict superpattern for length-4
/// arrangements over 4 letters, yet none of its length-12 subsequences is a
/// superpattern in which every letter is needed.
pub fn verify_quaternary_example() -> Result<QuaternaryReport> {
    const K: usize = 4;
    const SUB_LEN: usize = 12;
    let word = Word::parse(QUATERNARY_EXAMPLE)?;
    let w = word.letters();

    let mut checked = 0;
    let mut superpatterns = 0;
    let mut irreducible = 0;
    let n = w.len();
    // a length-12 subsequence drops exactly three positions
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let sub: Vec<Letter> = (0..n).filter(|&i| i != a && i != b && i != c).map(|i| w[i]).collect();
                debug_assert_eq!(sub.len(), SUB_LEN);
                checked += 1;
                if !is_superpattern(&sub, K)? {
                    continue;
                }
                superpatterns += 1;
                let mut every_letter_needed = true;
                for skip in 0..sub.len() {
                    let mut shorter = sub.clone();
                    shorter.remove(skip);
                    if is_superpattern(&shorter, K)? {
                        every_letter_needed = false;
                        break;
                    }
                }
                if every_letter_needed {
                    irreducible += 1;
                }
            }
        }
    }

    Ok(QuaternaryReport {
        word: QUATERNARY_EXAMPLE.to_string(),
        is_superpattern: is_superpattern(w, K)?,
        is_strict: is_strict(w, K)?,
        subsequence_length: SUB_LEN,
        subsequences_checked: checked,
        superpattern_subsequences: superpatterns,
        irreducible_subsequences: irreducible,
    })
}
