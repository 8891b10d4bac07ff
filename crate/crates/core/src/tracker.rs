//! Incremental tracking of which length-`k` arrangements a growing word contains.
//!
//! Over a fixed alphabet `{1..d}` the state is the set of distinct concrete
//! subsequences of length `<= k` seen so far, one bit per word in `{1..d}^l`.
//! Appending a letter `c` extends every stored subsequence of length `< k` by
//! `c`. A length-`k` subsequence newly seen marks its dense rank as found.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::patterns::{dense_rank, enumerate_preferential_arrangements};
use crate::word::{Letter, Pattern};

/// Largest `d^k` a tracker will index.
pub const MAX_TRACKED_WORDS: usize = 1 << 12;

/// Largest `k` the classification routines accept.
pub const MAX_SUPERPATTERN_K: usize = 5;

/// Precomputed layout shared by all tracker states for one `(d, k)`.
#[derive(Debug)]
pub struct ContainmentIndex {
    d: usize,
    k: usize,
    // first u64 slot of each level 0..=k; levels are slot-aligned
    level_slot: Vec<usize>,
    slots: usize,
    // pattern index of each concrete length-k word (base-d code)
    pattern_of: Vec<u16>,
    patterns: Vec<Pattern>,
}

/// Bit state for one word prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackerState {
    bits: Vec<u64>,
    found: Vec<u64>,
    missing: usize,
    len: usize,
}

impl TrackerState {
    pub fn is_complete(&self) -> bool {
        self.missing == 0
    }

    pub fn missing_count(&self) -> usize {
        self.missing
    }

    /// Number of letters pushed so far.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl ContainmentIndex {
    pub fn new(d: usize, k: usize) -> Result<Arc<Self>> {
        if k > MAX_SUPERPATTERN_K {
            return Err(Error::SizeCap {
                k,
                cap: MAX_SUPERPATTERN_K,
            });
        }
        if k == 0 {
            return Err(Error::InvalidArgument("pattern length must be positive".into()));
        }
        if d == 0 || d > Letter::MAX as usize {
            return Err(Error::InvalidArgument(format!("alphabet size {d} is not supported")));
        }
        let top = d
            .checked_pow(k as u32)
            .filter(|&n| n <= MAX_TRACKED_WORDS)
            .ok_or_else(|| Error::InvalidArgument(format!("{d}^{k} concrete words is too many to track")))?;

        let mut level_slot = Vec::with_capacity(k + 1);
        let mut slots = 0;
        let mut width = 1usize;
        for _ in 0..=k {
            level_slot.push(slots);
            slots += width.div_ceil(64);
            width *= d;
        }

        let patterns = enumerate_preferential_arrangements(k)?;
        let mut pattern_of = Vec::with_capacity(top);
        let mut letters = vec![0 as Letter; k];
        for code in 0..top {
            let mut c = code;
            for slot in letters.iter_mut().rev() {
                *slot = (c % d) as Letter + 1;
                c /= d;
            }
            let p = dense_rank(&letters);
            let idx = patterns.binary_search(&p).expect("every dense rank is enumerated");
            pattern_of.push(idx as u16);
        }

        Ok(Arc::new(ContainmentIndex {
            d,
            k,
            level_slot,
            slots,
            pattern_of,
            patterns,
        }))
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn pattern_length(&self) -> usize {
        self.k
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// State of the empty word.
    pub fn empty_state(&self) -> TrackerState {
        let mut bits = vec![0u64; self.slots];
        bits[0] = 1;
        TrackerState {
            bits,
            found: vec![0u64; self.patterns.len().div_ceil(64)],
            missing: self.patterns.len(),
            len: 0,
        }
    }

    /// Appends `letter` (in `1..=d`) to the tracked word.
    pub fn push(&self, state: &mut TrackerState, letter: Letter) {
        debug_assert!(letter >= 1 && letter as usize <= self.d);
        state.len += 1;
        if state.missing == 0 {
            return;
        }
        let c = letter as usize - 1;
        let mut width = self.d.pow(self.k as u32 - 1);
        for level in (0..self.k).rev() {
            let src = self.level_slot[level];
            let dst = self.level_slot[level + 1];
            let src_slots = width.div_ceil(64);
            for s in 0..src_slots {
                let mut word = state.bits[src + s];
                while word != 0 {
                    let code = s * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    let next = code * self.d + c;
                    let (slot, bit) = (dst + next / 64, 1u64 << (next % 64));
                    if state.bits[slot] & bit == 0 {
                        state.bits[slot] |= bit;
                        if level + 1 == self.k {
                            let p = self.pattern_of[next] as usize;
                            let (fs, fb) = (p / 64, 1u64 << (p % 64));
                            if state.found[fs] & fb == 0 {
                                state.found[fs] |= fb;
                                state.missing -= 1;
                            }
                        }
                    }
                }
            }
            width /= self.d;
        }
    }

    /// Patterns not yet contained, in lexicographic order.
    pub fn missing_patterns(&self, state: &TrackerState) -> Vec<Pattern> {
        self.patterns
            .iter()
            .enumerate()
            .filter(|(i, _)| state.found[i / 64] & (1u64 << (i % 64)) == 0)
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// State after pushing every letter of `word`.
    pub fn state_of(&self, word: &[Letter]) -> TrackerState {
        let mut state = self.empty_state();
        for &l in word {
            self.push(&mut state, l);
        }
        state
    }
}
