//! Superpattern predicates and classification of single words.
//!
//! These routines use the backtracking matcher in [`crate::patterns`]; the
//! exhaustive searches use the incremental tracker instead, so the two
//! routes check each other.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exhaustive::{min_superpattern_length, Budget};
use crate::patterns::{contains_pattern, enumerate_preferential_arrangements};
use crate::tracker::MAX_SUPERPATTERN_K;
use crate::word::{Letter, Pattern, Word};

/// Superpattern / minimal / strict / minimum flags for one word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClassFlags {
    pub is_superpattern: bool,
    /// Superpattern with no two adjacent letters equal.
    pub is_minimal: bool,
    /// Superpattern whose prefix without the last letter is not one.
    pub is_strict: bool,
    /// Minimal, and as short as any superpattern over the same alphabet.
    pub is_minimum: bool,
}

/// Sorted letter multiplicities `a1 >= a2 >= a3` of a ternary word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition3(pub [usize; 3]);

impl Partition3 {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// The length-`k` arrangements, computed once per `k`.
pub fn arrangements(k: usize) -> Result<&'static [Pattern]> {
    static CACHE: [OnceLock<Vec<Pattern>>; MAX_SUPERPATTERN_K + 1] =
        [const { OnceLock::new() }; MAX_SUPERPATTERN_K + 1];
    let slot = CACHE.get(k).ok_or(Error::SizeCap {
        k,
        cap: MAX_SUPERPATTERN_K,
    })?;
    Ok(slot.get_or_init(|| enumerate_preferential_arrangements(k).expect("k is within the cap")))
}

pub fn is_superpattern(word: &[Letter], k: usize) -> Result<bool> {
    Ok(arrangements(k)?.iter().all(|p| contains_pattern(word, p)))
}

/// Length-`k` arrangements not contained in `word`, in lexicographic order.
pub fn missing_patterns(word: &[Letter], k: usize) -> Result<Vec<Pattern>> {
    Ok(arrangements(k)?
        .iter()
        .filter(|p| !contains_pattern(word, p))
        .cloned()
        .collect())
}

/// `superpattern && !superpattern(word without its last letter)`.
pub fn is_strict(word: &[Letter], k: usize) -> Result<bool> {
    match word.split_last() {
        None => Ok(false),
        Some((_, prefix)) => Ok(is_superpattern(word, k)? && !is_superpattern(prefix, k)?),
    }
}

/// Least superpattern length for `(k, d)`, searched once and cached.
pub fn minimum_length(k: usize, d: usize, n_max: usize) -> Result<usize> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), usize>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&n) = cache.lock().expect("cache poisoned").get(&(k, d)) {
        return Ok(n);
    }
    let n = min_superpattern_length(k, d, n_max, Budget::from_env(d))?;
    cache.lock().expect("cache poisoned").insert((k, d), n);
    Ok(n)
}

/// Classifies `word` against the length-`k` arrangements, over the word's alphabet.
///
/// Deciding `is_minimum` may run an exhaustive search for the least
/// superpattern length over that alphabet, bounded by the budget from the
/// environment.
pub fn classify(word: &Word, k: usize) -> Result<ClassFlags> {
    let flags = classify_shape(word.letters(), k)?;
    if !flags.is_minimal {
        return Ok(flags);
    }
    let least = minimum_length(k, word.alphabet_size() as usize, word.len())?;
    Ok(ClassFlags {
        is_minimum: word.len() == least,
        ..flags
    })
}

/// Like [`classify`] with the least superpattern length supplied by the caller.
pub fn classify_with_minimum(word: &[Letter], k: usize, least: usize) -> Result<ClassFlags> {
    let flags = classify_shape(word, k)?;
    Ok(ClassFlags {
        is_minimum: flags.is_minimal && word.len() == least,
        ..flags
    })
}

fn classify_shape(word: &[Letter], k: usize) -> Result<ClassFlags> {
    let is_superpattern = is_superpattern(word, k)?;
    if !is_superpattern {
        return Ok(ClassFlags::default());
    }
    let is_minimal = word.windows(2).all(|w| w[0] != w[1]);
    let is_strict = !is_superpattern_prefix(word, k)?;
    Ok(ClassFlags {
        is_superpattern,
        is_minimal,
        is_strict,
        is_minimum: false,
    })
}

fn is_superpattern_prefix(word: &[Letter], k: usize) -> Result<bool> {
    match word.split_last() {
        None => Ok(false),
        Some((_, prefix)) => is_superpattern(prefix, k),
    }
}

/// Sorted multiplicities of the letters 1, 2, 3.
pub fn letter_multiplicities(word: &Word) -> Result<Partition3> {
    let mut counts = [0usize; 3];
    for (position, &l) in word.letters().iter().enumerate() {
        if !(1..=3).contains(&l) {
            return Err(Error::LetterOutOfRange {
                letter: l.into(),
                position,
                alphabet: 3,
            });
        }
        counts[l as usize - 1] += 1;
    }
    counts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition3(counts))
}
