//! Exhaustive enumeration over `{1..d}^n` and over the alternating-word space.
//!
//! Words are generated depth-first in lexicographic (base-`d` counter) order,
//! carrying a [`TrackerState`] per prefix. A prefix that already contains
//! every arrangement cannot be extended into a strict superpattern, so strict
//! searches stop descending there. The top levels of the tree are split into
//! independent tasks evaluated with rayon; results are concatenated in task
//! order, so output never depends on scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::patterns::relabel_canonical;
use crate::tracker::{ContainmentIndex, TrackerState};
use crate::word::{Letter, LetterPermutation, Word};

/// Cap on the number of words an exhaustive search may range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    max_words: u64,
}

impl Budget {
    /// Environment variable that overrides the default caps.
    pub const ENV_VAR: &'static str = "SUPERPATTERN_BUDGET";

    pub fn new(max_words: u64) -> Self {
        Budget { max_words }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// `2^24` for binary alphabets, `3^14` otherwise.
    pub fn default_for(d: usize) -> Self {
        if d <= 2 {
            Budget::new(1 << 24)
        } else {
            Budget::new(3u64.pow(14))
        }
    }

    /// The default for `d`, unless [`Budget::ENV_VAR`] holds a number.
    pub fn from_env(d: usize) -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_else(|| Budget::default_for(d))
    }

    pub fn max_words(&self) -> u64 {
        self.max_words
    }

    /// Fails when `d^n` exceeds the cap.
    pub fn check(&self, d: usize, n: usize) -> Result<()> {
        let size = (d as u128).checked_pow(n as u32);
        match size {
            Some(size) if size <= u128::from(self.max_words) => Ok(()),
            _ => Err(Error::BudgetExceeded {
                alphabet: d,
                length: n,
                budget: self.max_words,
            }),
        }
    }
}

const SPLIT_LEVELS: usize = 4;

/// Shape of the word tree being walked.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Walk<'a> {
    pub index: &'a ContainmentIndex,
    /// No two adjacent letters equal.
    pub alternating: bool,
    /// Letters first appear in increasing order (one word per isomorphism class).
    pub canonical: bool,
    /// Do not descend below a prefix that already contains every arrangement.
    pub stop_at_complete: bool,
    /// Maximum word length.
    pub depth: usize,
}

enum Task {
    Visit(Vec<Letter>, TrackerState),
    Expand(Vec<Letter>, TrackerState),
}

impl Walk<'_> {
    fn children(&self, prefix: &[Letter]) -> impl Iterator<Item = Letter> {
        let d = self.index.alphabet_size() as Letter;
        let max = if self.canonical {
            prefix.iter().copied().max().unwrap_or(0).saturating_add(1).min(d)
        } else {
            d
        };
        let skip = if self.alternating { prefix.last().copied() } else { None };
        (1..=max).filter(move |&c| Some(c) != skip)
    }

    fn is_terminal(&self, len: usize, state: &TrackerState) -> bool {
        len == self.depth || (self.stop_at_complete && state.is_complete())
    }

    /// Calls `visit` on each terminal node below `prefix`: words of length
    /// `depth`, plus (in strict mode) shorter words that just became complete.
    fn dfs<A>(
        &self,
        prefix: &mut Vec<Letter>,
        stack: &mut [TrackerState],
        acc: &mut A,
        visit: &(impl Fn(&[Letter], &TrackerState, &mut A) + Sync),
    ) {
        let len = prefix.len();
        if self.is_terminal(len, &stack[len]) {
            visit(prefix, &stack[len], acc);
            return;
        }
        for c in self.children(prefix) {
            let (head, tail) = stack.split_at_mut(len + 1);
            tail[0].clone_from(&head[len]);
            self.index.push(&mut tail[0], c);
            prefix.push(c);
            self.dfs(prefix, stack, acc, visit);
            prefix.pop();
        }
    }

    fn tasks(&self, root: &[Letter], state: TrackerState) -> Vec<Task> {
        let split = (root.len() + SPLIT_LEVELS).min(self.depth);
        let mut out = Vec::new();
        let mut pending = vec![(root.to_vec(), state)];
        while let Some((prefix, state)) = pending.pop() {
            if self.is_terminal(prefix.len(), &state) {
                out.push(Task::Visit(prefix, state));
            } else if prefix.len() >= split {
                out.push(Task::Expand(prefix, state));
            } else {
                let children: Vec<_> = self
                    .children(&prefix)
                    .map(|c| {
                        let mut next = state.clone();
                        self.index.push(&mut next, c);
                        let mut p = prefix.clone();
                        p.push(c);
                        (p, next)
                    })
                    .collect();
                pending.extend(children.into_iter().rev());
            }
        }
        out
    }

    /// Runs the walk below `root` and returns one accumulator per task, in
    /// lexicographic order of the tasks.
    pub fn run<A: Send + Default>(
        &self,
        root: &[Letter],
        visit: impl Fn(&[Letter], &TrackerState, &mut A) + Sync,
    ) -> Vec<A> {
        let state = self.index.state_of(root);
        self.tasks(root, state)
            .into_par_iter()
            .map(|task| {
                let mut acc = A::default();
                match task {
                    Task::Visit(prefix, state) => visit(&prefix, &state, &mut acc),
                    Task::Expand(mut prefix, state) => {
                        let mut stack = vec![state.clone(); self.depth + 1];
                        stack[prefix.len()] = state;
                        self.dfs(&mut prefix, &mut stack, &mut acc, &visit);
                    }
                }
                acc
            })
            .collect()
    }
}

fn index_for(d: usize, k: usize) -> Result<std::sync::Arc<ContainmentIndex>> {
    ContainmentIndex::new(d, k)
}

fn to_word(letters: &[Letter], d: usize) -> Word {
    Word::new(letters.to_vec(), d as Letter).expect("walk letters lie in the alphabet")
}

/// Number of words of each length `0..=n_max` over `{1..d}` that first
/// contain every length-`k` arrangement at their last letter.
pub fn strict_counts_by_length(d: usize, k: usize, n_max: usize, budget: Budget) -> Result<Vec<u64>> {
    budget.check(d, n_max)?;
    let index = index_for(d, k)?;
    let walk = Walk {
        index: &index,
        alternating: false,
        canonical: false,
        stop_at_complete: true,
        depth: n_max,
    };
    let parts = walk.run(&[], |prefix, state, acc: &mut Vec<u64>| {
        if state.is_complete() {
            if acc.is_empty() {
                acc.resize(n_max + 1, 0);
            }
            acc[prefix.len()] += 1;
        }
    });
    let mut totals = vec![0u64; n_max + 1];
    for part in parts {
        for (t, c) in totals.iter_mut().zip(part) {
            *t += c;
        }
    }
    Ok(totals)
}

/// Number of strict superpatterns of length `n` over `{1..d}`.
pub fn count_strict_superpatterns(d: usize, k: usize, n: usize, budget: Budget) -> Result<u64> {
    Ok(strict_counts_by_length(d, k, n, budget)?[n])
}

/// Strict superpatterns of length `n`, lexicographically ordered.
pub fn strict_superpatterns(d: usize, k: usize, n: usize, budget: Budget) -> Result<Vec<Word>> {
    collect_words(d, k, n, budget, false, false, true)
}

/// Every superpattern of length `n` (strict or not), lexicographically ordered.
pub fn superpatterns(d: usize, k: usize, n: usize, budget: Budget) -> Result<Vec<Word>> {
    collect_words(d, k, n, budget, false, false, false)
}

/// One representative (letters in first-occurrence order) per isomorphism
/// class of superpatterns of length `n`; `strict` restricts to strict ones.
pub fn superpatterns_upto_iso(d: usize, k: usize, n: usize, strict: bool, budget: Budget) -> Result<Vec<Word>> {
    collect_words(d, k, n, budget, false, true, strict)
}

fn collect_words(
    d: usize,
    k: usize,
    n: usize,
    budget: Budget,
    alternating: bool,
    canonical: bool,
    strict: bool,
) -> Result<Vec<Word>> {
    budget.check(d, n)?;
    let index = index_for(d, k)?;
    let walk = Walk {
        index: &index,
        alternating,
        canonical,
        stop_at_complete: strict,
        depth: n,
    };
    let parts = walk.run(&[], |prefix, state, acc: &mut Vec<Word>| {
        if prefix.len() == n && state.is_complete() {
            acc.push(to_word(prefix, d));
        }
    });
    Ok(parts.into_iter().flatten().collect())
}

fn alternating_ternary(n: usize, strict: bool, budget: Budget) -> Result<Vec<Word>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    budget.check(2, n - 2)?;
    let index = index_for(3, 3)?;
    let walk = Walk {
        index: &index,
        alternating: true,
        canonical: false,
        stop_at_complete: strict,
        depth: n,
    };
    let parts = walk.run(&[1, 2], |prefix, state, acc: &mut Vec<Word>| {
        if prefix.len() == n && state.is_complete() {
            acc.push(to_word(prefix, 3));
        }
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Minimal ternary superpatterns of length `n` (no two adjacent letters equal),
/// one per isomorphism class: the first two letters are fixed to `1, 2`.
pub fn enumerate_minimal_upto_iso(n: usize, budget: Budget) -> Result<Vec<Word>> {
    alternating_ternary(n, false, budget)
}

/// Strict minimal ternary superpatterns of length `n`, up to isomorphism.
pub fn enumerate_strict_minimal_upto_iso(n: usize, budget: Budget) -> Result<Vec<Word>> {
    alternating_ternary(n, true, budget)
}

/// All images of `words` under the letter permutations of `{1..d}`, sorted and deduplicated.
pub fn expand_isomorphs(words: &[Word], d: usize) -> Vec<Word> {
    let perms = LetterPermutation::all(d as Letter);
    let mut out: Vec<Word> = words
        .iter()
        .flat_map(|w| {
            perms.iter().map(move |p| {
                let letters = w.letters().iter().map(|&l| p.image(l)).collect();
                Word::new(letters, d as Letter).expect("permutation stays in alphabet")
            })
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Among alternating ternary words of length `n` starting `1, 2`, the number
/// that are not superpatterns, split by third letter: `1` (type A) and `3` (type B).
pub fn count_beta_bruteforce(n: usize, budget: Budget) -> Result<(u64, u64)> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
    }
    budget.check(2, n - 2)?;
    let index = index_for(3, 3)?;
    let walk = Walk {
        index: &index,
        alternating: true,
        canonical: false,
        stop_at_complete: true,
        depth: n,
    };
    // a complete prefix is a superpattern for every extension, so pruning there is exact
    let parts = walk.run(&[1, 2], |prefix, state, acc: &mut (u64, u64)| {
        if prefix.len() == n && !state.is_complete() {
            match prefix[2] {
                1 => acc.0 += 1,
                _ => acc.1 += 1,
            }
        }
    });
    Ok(parts.into_iter().fold((0, 0), |(a, b), (x, y)| (a + x, b + y)))
}

/// Least `n <= n_max` such that some word of length `n` over `{1..d}`
/// contains every length-`k` arrangement.
pub fn min_superpattern_length(k: usize, d: usize, n_max: usize, budget: Budget) -> Result<usize> {
    let index = index_for(d, k)?;
    for n in 0..=n_max {
        budget.check(d, n)?;
        let walk = Walk {
            index: &index,
            alternating: false,
            canonical: false,
            stop_at_complete: true,
            depth: n,
        };
        let found = walk.run(&[], |prefix, state, acc: &mut bool| {
            *acc |= prefix.len() == n && state.is_complete();
        });
        if found.into_iter().any(|f| f) {
            return Ok(n);
        }
    }
    Err(Error::NotFound { k, d, n_max })
}

/// True when `word` equals its first-occurrence relabeling.
pub fn is_canonical_representative(word: &Word) -> bool {
    relabel_canonical(word) == *word
}
